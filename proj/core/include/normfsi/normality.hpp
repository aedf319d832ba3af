#pragma once

#include "normfsi/rational.hpp"
#include "normfsi/words.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace normfsi {

enum class CountMode { aligned, sliding };

/// Per-block deviations |count/denominator - b^-l| for every u in A^l,
/// indexed by block rank.
struct DiscrepancyReport {
  std::size_t n = 0;
  std::size_t length = 0;
  CountMode mode = CountMode::aligned;
  std::uint64_t denominator = 0;
  std::vector<std::uint64_t> counts;
  std::vector<Rational> deviations;
  Rational max_deviation;
  std::uint64_t worst_block = 0;  // rank of a block reaching the maximum
};

/// Aligned counts alocc(w, u) over floor(n/l).
DiscrepancyReport simple_normality_discrepancy(const FiniteWord& w, std::size_t length);

/// Overlapping counts occ(w, u) over n.
DiscrepancyReport sliding_discrepancy(const FiniteWord& w, std::size_t length);

struct CBoundLevel {
  std::size_t length = 0;
  bool holds = true;
  std::uint64_t worst_block = 0;
  std::uint64_t worst_count = 0;
  Rational worst_ratio;  // occ(w, u) * b^|u| / |w| for the worst block
};

/// For each length 1..max_length, whether occ(w, u)/|w| <= C/b^|u| for all
/// u of that length; the test is done as occ * b^|u| <= C * |w| exactly.
std::vector<CBoundLevel> c_bound_check(const FiniteWord& w, std::size_t max_length, const Rational& c);

}  // namespace normfsi
