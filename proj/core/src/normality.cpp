#include "normfsi/normality.hpp"

#include "normfsi/error.hpp"

namespace normfsi {

namespace {

DiscrepancyReport report(const FiniteWord& w, std::size_t length, CountMode mode) {
  if (length < 1) {
    throw Error("block length must be at least 1");
  }
  if (length > w.size()) {
    throw Error("block length " + std::to_string(length) + " exceeds the word length " + std::to_string(w.size()));
  }
  DiscrepancyReport r;
  r.n = w.size();
  r.length = length;
  r.mode = mode;
  r.denominator = mode == CountMode::aligned ? w.size() / length : w.size();
  r.counts = block_histogram(w, length, mode == CountMode::aligned);
  const Rational expected(1, power(w.alphabet().size(), length));
  r.deviations.reserve(r.counts.size());
  r.max_deviation = 0;
  for (std::size_t i = 0; i < r.counts.size(); ++i) {
    Rational dev = Rational(r.counts[i], r.denominator) - expected;
    if (dev < 0) {
      dev = -dev;
    }
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.worst_block = i;
    }
    r.deviations.push_back(std::move(dev));
  }
  return r;
}

}  // namespace

DiscrepancyReport simple_normality_discrepancy(const FiniteWord& w, std::size_t length) {
  return report(w, length, CountMode::aligned);
}

DiscrepancyReport sliding_discrepancy(const FiniteWord& w, std::size_t length) {
  return report(w, length, CountMode::sliding);
}

std::vector<CBoundLevel> c_bound_check(const FiniteWord& w, std::size_t max_length, const Rational& c) {
  if (c <= 0) {
    throw Error("C must be positive");
  }
  if (w.empty()) {
    throw Error("c_bound_check needs a nonempty word");
  }
  std::vector<CBoundLevel> levels;
  const Rational limit = c * Rational(w.size());
  for (std::size_t length = 1; length <= max_length && length <= w.size(); ++length) {
    const auto counts = block_histogram(w, length, false);
    const BigInt scale = power(w.alphabet().size(), length);
    CBoundLevel level;
    level.length = length;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (i == 0 || counts[i] > level.worst_count) {
        level.worst_count = counts[i];
        level.worst_block = i;
      }
    }
    const Rational scaled = Rational(BigInt(level.worst_count) * scale);
    level.holds = scaled <= limit;
    level.worst_ratio = scaled / Rational(w.size());
    levels.push_back(std::move(level));
  }
  return levels;
}

}  // namespace normfsi
