#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace normfsi::cli {

enum ExitCode : int { ok = 0, usage = 1, budget = 2, validation = 3 };

/// Runs one command line (without the program name). Normal output goes to
/// `out`; errors and diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// NORMFSI_BUDGET when set, else 2^32.
std::uint64_t default_budget();

}  // namespace normfsi::cli
