#include <normfsi/error.hpp>
#include <normfsi/normality.hpp>
#include <normfsi/stream.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace normfsi;

namespace {

FiniteWord repeat(std::string_view unit, std::size_t times) {
  std::string s;
  for (std::size_t i = 0; i < times; ++i) s += unit;
  return FiniteWord::parse(s, Alphabet(2));
}

Rational abs_diff(const Rational& a, const Rational& b) { return a > b ? a - b : b - a; }

}  // namespace

TEST(Aligned, PeriodicBalanced) {
  const FiniteWord w = repeat("01", 5000);
  EXPECT_EQ(simple_normality_discrepancy(w, 1).max_deviation, 0);
  const DiscrepancyReport r2 = simple_normality_discrepancy(w, 2);
  EXPECT_EQ(r2.denominator, 5000U);
  EXPECT_EQ(r2.deviations[1], Rational(3, 4));
  EXPECT_EQ(r2.max_deviation, Rational(3, 4));
  EXPECT_EQ(r2.worst_block, 1U);
}

TEST(Aligned, DenominatorFloors) {
  const DiscrepancyReport r = simple_normality_discrepancy(repeat("0", 10), 3);
  EXPECT_EQ(r.denominator, 3U);
  EXPECT_EQ(r.counts[0], 3U);
}

TEST(Sliding, ConstantWord) {
  const DiscrepancyReport r = sliding_discrepancy(repeat("0", 100), 1);
  EXPECT_EQ(r.deviations[0], Rational(1, 2));
  EXPECT_EQ(r.denominator, 100U);
}

TEST(Sliding, LengthOneMatchesAligned) {
  std::mt19937 rng(1);
  std::string s;
  for (int i = 0; i < 999; ++i) s.push_back((rng() & 1U) ? '1' : '0');
  const FiniteWord w = FiniteWord::parse(s, Alphabet(2));
  const auto a = simple_normality_discrepancy(w, 1);
  const auto b = sliding_discrepancy(w, 1);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.max_deviation, b.max_deviation);
}

TEST(Sliding, RandomBruteRecount) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    std::string s;
    const std::size_t n = 50 + rng() % 400;
    for (std::size_t i = 0; i < n; ++i) s.push_back((rng() & 1U) ? '1' : '0');
    const FiniteWord w = FiniteWord::parse(s, Alphabet(2));
    for (std::size_t l = 1; l <= 4; ++l) {
      const auto r = sliding_discrepancy(w, l);
      const auto a = simple_normality_discrepancy(w, l);
      for (std::uint64_t k = 0; k < (1U << l); ++k) {
        const std::string u = block_from_index(k, l, Alphabet(2)).to_string();
        const Rational expect = abs_diff(Rational(oracle::occ(s, u), n), Rational(1, 1U << l));
        EXPECT_EQ(r.deviations[k], expect);
        const Rational aligned = abs_diff(Rational(oracle::alocc(s, u), n / l), Rational(1, 1U << l));
        EXPECT_EQ(a.deviations[k], aligned);
      }
    }
  }
}

TEST(CBound, ConstantWordFails) {
  const auto levels = c_bound_check(repeat("0", 1000), 4, 4);
  ASSERT_EQ(levels.size(), 4U);
  EXPECT_FALSE(levels[3].holds);
  EXPECT_EQ(levels[3].worst_block, 0U);
}

TEST(CBound, BaseConstantIsVacuousAtLengthOne) {
  std::mt19937 rng(3);
  std::string s;
  for (int i = 0; i < 200; ++i) s.push_back((rng() % 5 == 0) ? '1' : '0');
  const auto levels = c_bound_check(FiniteWord::parse(s, Alphabet(2)), 1, 2);
  EXPECT_TRUE(levels[0].holds);
  EXPECT_FALSE(c_bound_check(FiniteWord::parse(s, Alphabet(2)), 1, Rational(3, 2))[0].holds);
}

TEST(CBound, ChampernownePrefix) {
  const FiniteWord w = stream_prefix(WordStream::champernowne(2), 1000000);
  for (const auto& level : c_bound_check(w, 4, 4)) EXPECT_TRUE(level.holds) << level.length;
}

TEST(CBound, Preconditions) {
  EXPECT_THROW(c_bound_check(FiniteWord(Alphabet(2)), 1, 4), Error);
  EXPECT_THROW(c_bound_check(repeat("01", 3), 1, 0), Error);
}
