#pragma once

#include "normfsi/automaton.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace normfsi {

/// Machines drawn in the figures, plus the declared-injective compressors.
/// State 0 is initial in all of them; every alphabet is {0, 1}.
///
///   fig2-join       3-tape, interleaves x and y: z = x1 y1 x2 y2 ...
///   fig2-shuffle    3-tape, one state, not 2-deterministic (alias fig4)
///   fig3            2-tape, stationary law (2/3, 1/3)
///   fig5            2-tape, bipartite 4-cycle
///   fig6-selector   selects x[i] where y[i] = 1
///   fig7-shuffler   the two-state shuffler
///   copy-compressor     z = x, y ignored
///   modsum-compressor   z[i] = x[i] + y[i] mod 2
KAutomaton builtin(std::string_view name);

std::vector<std::string> builtin_names();

}  // namespace normfsi
