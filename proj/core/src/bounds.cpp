#include "normfsi/bounds.hpp"

#include "normfsi/error.hpp"
#include "normfsi/schedule.hpp"
#include "normfsi/shuffler_enum.hpp"

#include <algorithm>

namespace normfsi {

namespace {

void require_budget(std::uint32_t b, std::size_t n, std::uint64_t budget, const char* what) {
  const BigInt size = power(b, n) * n;
  if (budget != 0 && size > budget) {
    throw BudgetExceeded(std::string(what) + ": enumerating " + size.str() + " symbols exceeds the budget of " +
                             std::to_string(budget),
                         size.str(), budget);
  }
  if (n > 40) {
    throw BudgetExceeded(std::string(what) + ": n = " + std::to_string(n) + " is beyond exhaustive enumeration",
                         size.str(), budget);
  }
}

// N(gamma, i, n) for i = 0..n by walking every word of A^n
std::vector<std::uint64_t> exhaustive_histogram(const FiniteWord& gamma, std::size_t n) {
  const std::uint32_t b = gamma.alphabet().size();
  const std::size_t r = gamma.size();
  const std::uint64_t target = block_index(gamma);
  std::uint64_t modulus = 1;
  for (std::size_t i = 0; i < r; ++i) {
    modulus *= b;
  }
  std::vector<std::uint64_t> hist(n + 1, 0);
  std::vector<Symbol> digits(n, 0);
  for (;;) {
    std::uint64_t rank = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      rank = (rank * b + digits[i]) % modulus;
      if (i + 1 >= r && rank == target) {
        ++count;
      }
    }
    ++hist[count];
    std::size_t i = n;
    while (i > 0 && digits[i - 1] + 1 == b) {
      digits[--i] = 0;
    }
    if (i == 0) {
      break;
    }
    ++digits[i - 1];
  }
  return hist;
}

std::vector<bool> accepted_counts(const FiniteWord& gamma, const Rational& epsilon, std::size_t n) {
  std::vector<bool> ok(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    ok[i] = within_epsilon(i, n, gamma.size(), gamma.alphabet().size(), epsilon);
  }
  return ok;
}

void check_gamma(const FiniteWord& gamma) {
  if (gamma.empty()) {
    throw Error("the block gamma must be nonempty");
  }
}

}  // namespace

BigInt count_P(const Rational& epsilon, const FiniteWord& gamma, std::size_t n, std::uint64_t budget) {
  check_gamma(gamma);
  require_budget(gamma.alphabet().size(), n, budget, "count_P");
  const auto hist = exhaustive_histogram(gamma, n);
  const auto ok = accepted_counts(gamma, epsilon, n);
  BigInt total = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (ok[i]) {
      total += hist[i];
    }
  }
  return total;
}

BigInt tail_count_exhaustive(const FiniteWord& gamma, const Rational& epsilon, std::size_t n, std::uint64_t budget) {
  check_gamma(gamma);
  require_budget(gamma.alphabet().size(), n, budget, "tail_count");
  const auto hist = exhaustive_histogram(gamma, n);
  const auto ok = accepted_counts(gamma, epsilon, n);
  BigInt total = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (!ok[i]) {
      total += hist[i];
    }
  }
  return total;
}

std::vector<BigInt> occurrence_distribution(const FiniteWord& gamma, std::size_t n) {
  check_gamma(gamma);
  const std::uint32_t b = gamma.alphabet().size();
  const std::size_t r = gamma.size();
  const auto g = gamma.symbols();
  // failure function and transitions of the matcher; state = matched length
  std::vector<std::size_t> fail(r + 1, 0);
  for (std::size_t i = 1, k = 0; i < r; ++i) {
    while (k > 0 && g[i] != g[k]) {
      k = fail[k];
    }
    if (g[i] == g[k]) {
      ++k;
    }
    fail[i + 1] = k;
  }
  std::vector<std::vector<std::size_t>> delta(r + 1, std::vector<std::size_t>(b));
  for (std::size_t s = 0; s <= r; ++s) {
    for (Symbol c = 0; c < b; ++c) {
      if (s < r && g[s] == c) {
        delta[s][c] = s + 1;
      } else if (s == 0) {
        delta[s][c] = 0;
      } else {
        delta[s][c] = delta[fail[s]][c];
      }
    }
  }
  // dp[state][count]
  std::vector<std::vector<BigInt>> dp(r + 1, std::vector<BigInt>(n + 1));
  dp[0][0] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<std::vector<BigInt>> next(r + 1, std::vector<BigInt>(n + 1));
    for (std::size_t s = 0; s <= r; ++s) {
      for (std::size_t i = 0; i <= step; ++i) {
        if (dp[s][i] == 0) {
          continue;
        }
        for (Symbol c = 0; c < b; ++c) {
          const std::size_t t = delta[s][c];
          next[t][t == r ? i + 1 : i] += dp[s][i];
        }
      }
    }
    dp = std::move(next);
  }
  std::vector<BigInt> hist(n + 1);
  for (std::size_t s = 0; s <= r; ++s) {
    for (std::size_t i = 0; i <= n; ++i) {
      hist[i] += dp[s][i];
    }
  }
  return hist;
}

BigInt tail_count(const FiniteWord& gamma, const Rational& epsilon, std::size_t n) {
  const auto hist = occurrence_distribution(gamma, n);
  const auto ok = accepted_counts(gamma, epsilon, n);
  BigInt total = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (!ok[i]) {
      total += hist[i];
    }
  }
  return total;
}

Real hardy_bound(std::uint32_t b, std::size_t r, const Rational& epsilon, std::size_t n) {
  const Real eps = Real(numerator(epsilon)) / Real(denominator(epsilon));
  const Real br = pow(Real(b), static_cast<int>(r));
  const Real scale = pow(Real(b), static_cast<int>(n + 2 * r - 2));
  return 2 * scale * Real(r) * exp(-br * eps * eps * Real(n) / (6 * Real(r)));
}

std::optional<std::pair<Rational, Rational>> hardy_window(std::uint32_t b, std::size_t r, std::size_t n) {
  if (r == 0 || n / r == 0) {
    return std::nullopt;
  }
  const Rational lo(6, n / r);
  const Rational hi = Rational(1) / Rational(power(b, r));
  if (lo > hi) {
    return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

bool in_hardy_window(std::uint32_t b, std::size_t r, const Rational& epsilon, std::size_t n) {
  const auto w = hardy_window(b, r, n);
  return w && w->first <= epsilon && epsilon <= w->second;
}

BoundReport verify_boundE(std::uint32_t b, std::size_t r, const Rational& epsilon, std::size_t n,
                          std::uint64_t budget) {
  BoundReport report;
  report.name = "boundE";
  report.window_ok = in_hardy_window(b, r, epsilon, n);
  const Real eps = Real(numerator(epsilon)) / Real(denominator(epsilon));
  const Real br = pow(Real(b), static_cast<int>(r));
  report.bound = 1 - 2 * pow(Real(b), static_cast<int>(2 * r - 2)) * Real(r) *
                         exp(-br * eps * eps * Real(n) / (6 * Real(r)));
  report.informative = report.bound > 0;
  const BigInt size = power(b, n) * n * power(b, r);
  report.required = size.str();
  report.feasible = (budget == 0 || size <= budget) && n <= 40;
  if (!report.feasible) {
    return report;
  }
  const Alphabet alphabet(b);
  const std::uint64_t blocks = power(b, r).convert_to<std::uint64_t>();
  std::optional<Rational> worst;
  for (std::uint64_t k = 0; k < blocks; ++k) {
    const FiniteWord gamma = block_from_index(k, r, alphabet);
    const Rational mu = Rational(count_P(epsilon, gamma, n)) / Rational(power(b, n));
    if (!worst || mu < *worst) {
      worst = mu;
    }
  }
  report.measure = worst;
  report.holds = Real(numerator(*worst)) / Real(denominator(*worst)) > report.bound;
  return report;
}

namespace {

MeasureProblem f_problem(std::uint32_t b, const Rational& epsilon, std::size_t t, std::size_t l, std::size_t n) {
  MeasureProblem p;
  p.base = b;
  p.cylinder = CylinderPair(Alphabet(b));
  const ShufflerEnumeration shufflers(b);
  for (std::size_t i = 1; i <= t; ++i) {
    p.shufflers.push_back(Deterministic::make(shufflers.decode(i), 2));
  }
  p.checks.push_back(BlockCheck{n, t, l, {}, epsilon});
  return p;
}

void fill_measure(BoundReport& report, const MeasureProblem& p, std::uint64_t budget, unsigned workers) {
  const Cost cost = enumeration_cost(p);
  report.required = cost.size.str();
  report.feasible = cost.within(budget) && 2 * p.horizon() <= 120;
  if (report.feasible) {
    report.measure = measure(p, MeasureOptions{budget, workers}).value();
  }
}

}  // namespace

BoundReport verify_boundA(std::uint32_t b, const Rational& epsilon, std::size_t t, std::size_t l, std::size_t n,
                          std::uint64_t budget, unsigned workers) {
  BoundReport report;
  report.name = "boundA";
  report.window_ok = l >= 1 && n / l > 0 && Rational(6, n / l) <= epsilon &&
                     epsilon <= Rational(1) / Rational(power(b, l));
  const Real eps = Real(numerator(epsilon)) / Real(denominator(epsilon));
  report.bound = 1 - 2 * Real(t) * pow(Real(b), static_cast<int>(3 * l - 1)) *
                         exp(-eps * eps * Real(n) / (3 * Real(l)));
  report.informative = report.bound > 0;
  const MeasureProblem p = f_problem(b, epsilon, t, l, n);
  fill_measure(report, p, budget, workers);
  if (report.measure) {
    report.holds = Real(numerator(*report.measure)) / Real(denominator(*report.measure)) > report.bound;
  }
  return report;
}

BoundReport verify_boundquad(std::uint32_t b, std::size_t n, std::uint64_t budget, unsigned workers,
                             bool natural_ell) {
  BoundReport report;
  report.name = "boundquad";
  const std::size_t l = paper_ell(n, b, natural_ell);
  const Rational epsilon = paper_epsilon(n, b);
  report.window_ok =
      n / l > 0 && Rational(6, n / l) <= epsilon && epsilon <= Rational(1) / Rational(power(b, l));
  report.bound = 1 - Real(1) / (Real(n) * Real(n));
  report.informative = report.bound > 0;
  const MeasureProblem p = f_problem(b, epsilon, n, l, n);
  fill_measure(report, p, budget, workers);
  if (report.measure) {
    report.holds = Real(numerator(*report.measure)) / Real(denominator(*report.measure)) >= report.bound;
  }
  return report;
}

}  // namespace normfsi
