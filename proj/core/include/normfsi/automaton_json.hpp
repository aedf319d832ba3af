#pragma once

#include "normfsi/automaton.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace normfsi {

/// {"k", "alphabets", "states", "initial", "transitions": [{"from", "label", "to"}]}
/// with null label entries for the empty word. "initial" is an integer when
/// there is exactly one initial state and an array otherwise.
nlohmann::json to_json(const KAutomaton& a);

/// Throws normfsi::Error on malformed documents.
KAutomaton automaton_from_json(const nlohmann::json& doc);

KAutomaton load_automaton(const std::filesystem::path& path);

nlohmann::json to_json(const Diagnostics& d);

}  // namespace normfsi
