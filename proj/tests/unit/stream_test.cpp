#include <normfsi/error.hpp>
#include <normfsi/stream.hpp>

#include <gtest/gtest.h>

using namespace normfsi;

namespace {

std::string numerals(std::uint64_t count, std::uint32_t b) {
  std::string out;
  for (std::uint64_t v = 0; v < count; ++v) {
    std::string digits;
    std::uint64_t x = v;
    do {
      digits.insert(digits.begin(), symbol_char(static_cast<Symbol>(x % b)));
      x /= b;
    } while (x != 0);
    out += digits;
  }
  return out;
}

}  // namespace

TEST(Champernowne, BaseTenPrefix) {
  EXPECT_EQ(stream_prefix(WordStream::champernowne(10), 20).to_string(), "01234567891011121314");
}

TEST(Champernowne, BaseTwoPrefix) {
  EXPECT_EQ(stream_prefix(WordStream::champernowne(2), 10).to_string(), "0110111001");
}

TEST(Champernowne, MatchesConcatenatedNumerals) {
  for (std::uint32_t b : {2U, 3U, 7U, 10U}) {
    const std::string expected = numerals(5000, b);
    const auto s = WordStream::champernowne(b);
    EXPECT_EQ(stream_prefix(s, expected.size()).to_string(), expected) << "base " << b;
  }
}

TEST(Champernowne, RandomAccessAgreesWithReader) {
  const auto s = WordStream::champernowne(3);
  const FiniteWord p = stream_prefix(s, 30000);
  for (std::size_t i : {1U, 2U, 3U, 4U, 9U, 10U, 100U, 7777U, 29999U, 30000U}) {
    EXPECT_EQ(s.at(i), p.letter(i)) << i;
  }
}

TEST(Periodic, Repeats) {
  EXPECT_EQ(stream_prefix(WordStream::parse("periodic:01"), 5).to_string(), "01010");
  EXPECT_EQ(stream_prefix(WordStream::parse("periodic:210"), 7).to_string(), "2102102");
}

TEST(Explicit, ExhaustsAtEnd) {
  const auto s = WordStream::parse("explicit:0011");
  EXPECT_EQ(s.length(), 4U);
  EXPECT_EQ(stream_prefix(s, 4).to_string(), "0011");
  EXPECT_THROW(stream_prefix(s, 5), StreamExhausted);
  EXPECT_THROW(s.at(5), StreamExhausted);
  StreamReader r(s);
  for (int i = 0; i < 4; ++i) {
    ASSERT_TRUE(r.peek().has_value());
    r.advance();
  }
  EXPECT_FALSE(r.peek().has_value());
  EXPECT_EQ(r.consumed(), 4U);
}

TEST(Prng, DeterministicPerSeed) {
  const auto a = WordStream::parse("prng:2:42");
  const auto b = WordStream::parse("prng:2:42");
  const auto c = WordStream::parse("prng:2:43");
  const FiniteWord pa = stream_prefix(a, 10000);
  EXPECT_EQ(pa, stream_prefix(b, 10000));
  EXPECT_NE(pa, stream_prefix(c, 10000));
  EXPECT_EQ(a.at(1234), pa.letter(1234));
}

TEST(Prng, SymbolsStayInBase) {
  const auto s = WordStream::prng(5, 1);
  const FiniteWord p = stream_prefix(s, 20000);
  std::vector<std::size_t> seen(5, 0);
  for (std::size_t i = 0; i < p.size(); ++i) ++seen[p[i]];
  for (auto n : seen) EXPECT_GT(n, 3500U);
}

TEST(Parse, BaseInferenceAndSpecRoundTrip) {
  EXPECT_EQ(WordStream::parse("explicit:0120").alphabet().size(), 3U);
  EXPECT_EQ(WordStream::parse("explicit:000").alphabet().size(), 2U);
  EXPECT_EQ(WordStream::parse("explicit:01:4").alphabet().size(), 4U);
  for (std::string_view spec : {"champernowne:3", "periodic:01:2", "explicit:0110:2", "prng:2:99"}) {
    EXPECT_EQ(WordStream::parse(spec).spec(), spec);
  }
}

TEST(Parse, RejectsMalformed) {
  EXPECT_THROW(WordStream::parse("champernowne"), Error);
  EXPECT_THROW(WordStream::parse("champernowne:1"), Error);
  EXPECT_THROW(WordStream::parse("bogus:2"), Error);
  EXPECT_THROW(WordStream::parse("prng:2"), Error);
  EXPECT_THROW(WordStream::parse("explicit:012:2"), Error);
}
