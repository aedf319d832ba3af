#pragma once

#include "normfsi/automaton.hpp"
#include "normfsi/rational.hpp"
#include "normfsi/words.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace normfsi {

/// mu = count * b^-exponent, exactly.
struct ExactMeasure {
  BigInt count = 0;
  std::uint32_t base = 2;
  std::uint64_t exponent = 0;

  Rational value() const;
  /// "count/b^exponent" reduced to "p/q".
  std::string to_string() const { return normfsi::to_string(value()); }

  friend bool operator==(const ExactMeasure& a, const ExactMeasure& b) { return a.value() == b.value(); }
  friend bool operator<(const ExactMeasure& a, const ExactMeasure& b) { return a.value() < b.value(); }
};

/// ([u], [v]): all pairs (x, y) with x starting with u and y with v.
struct CylinderPair {
  FiniteWord u;
  FiniteWord v;

  explicit CylinderPair(Alphabet alphabet) : u(alphabet), v(alphabet) {}
  CylinderPair(FiniteWord u_, FiniteWord v_) : u(std::move(u_)), v(std::move(v_)) {}

  ExactMeasure measure() const;
  /// Child extending u (or v) by symbol c.
  CylinderPair extend(bool extend_u, Symbol c) const;

  friend bool operator==(const CylinderPair&, const CylinderPair&) = default;
};

/// One block-frequency requirement at a checkpoint: for the first
/// `machines` shufflers and every block gamma considered,
///   |occ(S_i(x,y)[1..length], gamma) - length/b^|gamma|| < epsilon * length.
/// Blocks are either all words of length 1..max_block or an explicit list.
struct BlockCheck {
  std::size_t length = 0;
  std::size_t machines = 0;
  std::size_t max_block = 1;
  std::vector<FiniteWord> blocks;  // when nonempty, overrides max_block
  Rational epsilon;
};

/// The set of pairs satisfying every check, intersected with a cylinder.
struct MeasureProblem {
  std::uint32_t base = 2;
  std::vector<Deterministic> shufflers;  // S_1, S_2, ... in enumeration order
  std::vector<BlockCheck> checks;
  CylinderPair cylinder{Alphabet(2)};

  /// max(checkpoint lengths, |u|, |v|): extensions are taken to this length.
  std::size_t horizon() const;
};

struct MeasureOptions {
  std::uint64_t budget = 0;  // 0 = unlimited
  unsigned workers = 1;
};

/// Nominal enumeration size b^(2L - |u| - |v|) * t (t = shufflers used),
/// as a decimal string, and whether it fits in `budget`.
struct Cost {
  BigInt size;
  bool within(std::uint64_t budget) const { return budget == 0 || size <= budget; }
};
Cost enumeration_cost(const MeasureProblem& p);

/// Exact measure of cylinder ∩ checks. The extension pairs are explored by a
/// memoized search over the symbols actually read; workers split the search
/// by the leading free x digits and merge integer counts, so the result does
/// not depend on the worker count. Throws BudgetExceeded when
/// enumeration_cost exceeds the budget.
ExactMeasure measure(const MeasureProblem& p, const MeasureOptions& options = {});

/// Whether the pair (x_ext, y_ext) lies in E_S(epsilon, gamma, n):
/// runs the shuffler for n transitions and tests the strict bound on the
/// overlapping count of gamma.
bool membership_in_E(const Deterministic& shuffler, const Rational& epsilon, const FiniteWord& gamma,
                     std::size_t n, const FiniteWord& x_ext, const FiniteWord& y_ext);

/// |occ * b^r - n| * q < p * n * b^r with epsilon = p/q.
bool within_epsilon(std::uint64_t occurrences, std::size_t n, std::size_t r, std::uint32_t base,
                    const Rational& epsilon);

}  // namespace normfsi
