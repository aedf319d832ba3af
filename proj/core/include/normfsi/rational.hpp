#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace normfsi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", a plain integer, or a finite decimal such as "0.45" into an
/// exact rational. Throws normfsi::Error on malformed input or q = 0.
Rational parse_rational(std::string_view text);

/// Always "p/q" in lowest terms, including "0/1" and "1/1".
std::string to_string(const Rational& r);

/// Lossy conversion for reporting only.
double to_double(const Rational& r);

/// b^e as a big integer.
BigInt power(std::uint64_t base, std::uint64_t exponent);

}  // namespace normfsi
