#include "normfsi/rational.hpp"

#include "normfsi/error.hpp"

#include <algorithm>
#include <cctype>

namespace normfsi {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error("malformed integer '" + std::string(s) + "'");
  }
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) {
    throw Error("empty rational");
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) {
      throw Error("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!frac.empty() && !all_digits(frac)) {
      throw Error("malformed decimal '" + std::string(text) + "'");
    }
    BigInt int_part = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : parse_integer(whole);
    BigInt frac_part = frac.empty() ? BigInt(0) : BigInt(std::string(frac));
    BigInt scale = power(10, frac.size());
    Rational magnitude = Rational(boost::multiprecision::abs(int_part)) + Rational(frac_part, scale);
    return negative ? Rational(-magnitude) : magnitude;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt power(std::uint64_t base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1U) {
      result *= b;
    }
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace normfsi
