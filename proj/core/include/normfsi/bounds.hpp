#pragma once

#include "normfsi/measure.hpp"
#include "normfsi/rational.hpp"
#include "normfsi/words.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace normfsi {

/// Floating type for the closed-form bounds, which involve e^x.
using Real = boost::multiprecision::cpp_bin_float_50;

/// |{w in A^n : |occ(w, gamma) - n/b^|gamma|| < epsilon n}| by enumerating
/// A^n. Throws BudgetExceeded when n * b^n exceeds the budget (0 = none).
BigInt count_P(const Rational& epsilon, const FiniteWord& gamma, std::size_t n, std::uint64_t budget = 0);

/// N(gamma, i, n) for i = 0..n, by dynamic programming over the
/// Knuth-Morris-Pratt automaton of gamma.
std::vector<BigInt> occurrence_distribution(const FiniteWord& gamma, std::size_t n);

/// Sum of N(gamma, i, n) over i <= n/b^r - epsilon n and i >= n/b^r + epsilon n,
/// equal to b^n - count_P(epsilon, gamma, n).
BigInt tail_count(const FiniteWord& gamma, const Rational& epsilon, std::size_t n);

/// The same sum by enumerating A^n.
BigInt tail_count_exhaustive(const FiniteWord& gamma, const Rational& epsilon, std::size_t n,
                             std::uint64_t budget = 0);

/// 2 b^(n+2r-2) r e^(-b^r epsilon^2 n / (6r)).
Real hardy_bound(std::uint32_t b, std::size_t r, const Rational& epsilon, std::size_t n);

/// 6/floor(n/r) <= epsilon <= 1/b^r.
bool in_hardy_window(std::uint32_t b, std::size_t r, const Rational& epsilon, std::size_t n);

/// Endpoints of the window as rationals; nullopt when it is empty.
std::optional<std::pair<Rational, Rational>> hardy_window(std::uint32_t b, std::size_t r, std::size_t n);

struct BoundReport {
  std::string name;
  bool window_ok = false;      // parameters inside the stated window
  bool feasible = false;       // the exact measure was computed
  std::string required;        // nominal enumeration size
  std::optional<Rational> measure;
  Real bound = 0;              // the lower bound 1 - (...)
  bool informative = false;    // bound > 0
  std::optional<bool> holds;   // measure > bound (>= for boundquad)
};

/// mu(E_S(epsilon, gamma, n)) = |P| b^-n against 1 - 2 b^(2r-2) r e^(-b^r eps^2 n/(6r)),
/// using the worst gamma in A^r.
BoundReport verify_boundE(std::uint32_t b, std::size_t r, const Rational& epsilon, std::size_t n,
                          std::uint64_t budget);

/// mu(F(epsilon, t, l, n)) against 1 - 2 t b^(3l-1) e^(-eps^2 n/(3l)), with
/// the first t enumerated shufflers.
BoundReport verify_boundA(std::uint32_t b, const Rational& epsilon, std::size_t t, std::size_t l, std::size_t n,
                          std::uint64_t budget, unsigned workers = 1);

/// mu(F_n) against 1 - 1/n^2 with the schedule parameters at n.
BoundReport verify_boundquad(std::uint32_t b, std::size_t n, std::uint64_t budget, unsigned workers = 1,
                             bool natural_ell = false);

}  // namespace normfsi
