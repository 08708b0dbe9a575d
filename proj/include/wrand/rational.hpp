#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "wrand/errors.hpp"

namespace wrand {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// floor(p/q) for q > 0, exact.
inline BigInt floor_div(const BigInt& p, const BigInt& q) {
  BigInt d = p / q;
  if (p % q != 0 && ((p < 0) != (q < 0))) --d;
  return d;
}

inline BigInt floor_rational(const Rational& x) {
  return floor_div(numerator(x), denominator(x));
}

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

// Strict base-10 parse (BigInt's own parser reads leading zeros as octal).
BigInt parse_bigint(const std::string& text);

// Parses "p", "p/q" or a decimal like "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);

}  // namespace wrand
