#include "normfsi/automaton_json.hpp"

#include "normfsi/error.hpp"

#include <fstream>

namespace normfsi {

using nlohmann::json;

json to_json(const KAutomaton& a) {
  json alphabets = json::array();
  for (const auto& alphabet : a.alphabets()) {
    alphabets.push_back(alphabet.size());
  }
  json transitions = json::array();
  for (const auto& t : a.transitions()) {
    json label = json::array();
    for (const auto& entry : t.label) {
      label.push_back(entry ? json(*entry) : json(nullptr));
    }
    transitions.push_back({{"from", t.from}, {"label", label}, {"to", t.to}});
  }
  json initial = a.initial().size() == 1 ? json(a.initial().front()) : json(a.initial());
  return {{"k", a.tapes()},
          {"alphabets", alphabets},
          {"states", a.state_count()},
          {"initial", initial},
          {"transitions", transitions}};
}

namespace {

template <typename T>
T field(const json& doc, const char* name) {
  if (!doc.contains(name)) {
    throw Error(std::string("automaton JSON: missing field \"") + name + "\"");
  }
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error(std::string("automaton JSON: field \"") + name + "\" has the wrong type");
  }
}

}  // namespace

KAutomaton automaton_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw Error("automaton JSON: expected an object");
  }
  const auto k = field<std::size_t>(doc, "k");
  const auto sizes = field<std::vector<std::uint32_t>>(doc, "alphabets");
  if (sizes.size() != k) {
    throw Error("automaton JSON: \"alphabets\" has " + std::to_string(sizes.size()) + " entries, k = " +
                std::to_string(k));
  }
  std::vector<Alphabet> alphabets;
  for (auto b : sizes) {
    alphabets.emplace_back(b);
  }
  const auto states = field<std::size_t>(doc, "states");
  std::vector<StateId> initial;
  if (doc.contains("initial") && doc.at("initial").is_array()) {
    initial = field<std::vector<StateId>>(doc, "initial");
  } else {
    initial.push_back(field<StateId>(doc, "initial"));
  }
  std::vector<Transition> transitions;
  for (const auto& t : field<json>(doc, "transitions")) {
    Transition tr;
    tr.from = field<StateId>(t, "from");
    tr.to = field<StateId>(t, "to");
    for (const auto& entry : field<json>(t, "label")) {
      if (entry.is_null()) {
        tr.label.emplace_back(std::nullopt);
      } else if (entry.is_number_unsigned()) {
        tr.label.emplace_back(entry.get<Symbol>());
      } else {
        throw Error("automaton JSON: label entries must be symbols or null");
      }
    }
    transitions.push_back(std::move(tr));
  }
  return KAutomaton(std::move(alphabets), states, std::move(initial), std::move(transitions));
}

KAutomaton load_automaton(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  return automaton_from_json(doc);
}

json to_json(const Diagnostics& d) {
  json violations = json::array();
  for (const auto& v : d.violations) {
    json item = {{"kind", v.kind}, {"message", v.message}};
    if (v.state) {
      item["state"] = *v.state;
    }
    if (v.first) {
      item["transitions"] = v.second ? json::array({*v.first, *v.second}) : json::array({*v.first});
    }
    violations.push_back(item);
  }
  return {{"ok", d.ok()}, {"violations", violations}};
}

}  // namespace normfsi
