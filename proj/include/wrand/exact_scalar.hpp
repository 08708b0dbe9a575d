#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "wrand/rational.hpp"

namespace wrand {

/// Exact rational with a 3-smooth denominator: value = num / (2^two_exp * 3^third_exp).
///
/// Every endpoint, measure and integral in this library lives in this set:
/// dyadic rationals, their +-1/3 translates, and products thereof. Addition,
/// subtraction and multiplication are closed and exact; division is exact but
/// checked (throws if the quotient leaves the 3-smooth world). Values are kept
/// fully reduced, so equality is structural.
class ExactScalar {
public:
  ExactScalar() : num_(0), two_exp_(0), third_exp_(0) {}
  ExactScalar(long v) : num_(v), two_exp_(0), third_exp_(0) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(BigInt num, unsigned two_exp, unsigned third_exp = 0)
      : num_(std::move(num)), two_exp_(two_exp), third_exp_(third_exp) {
    canonicalize();
  }

  /// 2^k, exact for any integer k.
  static ExactScalar pow2(int k);
  /// m / 2^r
  static ExactScalar dyadic(BigInt m, unsigned r) { return ExactScalar(std::move(m), r); }
  /// m / 3
  static ExactScalar third(long m) { return ExactScalar(BigInt(m), 0, 1); }

  /// Throws SchemaError unless x has a 3-smooth denominator.
  static ExactScalar from_rational(const Rational& x);

  const BigInt& num() const { return num_; }
  unsigned two_exp() const { return two_exp_; }
  unsigned third_exp() const { return third_exp_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_dyadic() const { return third_exp_ == 0; }
  /// Smallest r with value in D_r. Only meaningful for dyadic values.
  unsigned dyadic_precision() const { return two_exp_; }
  bool is_integer() const { return two_exp_ == 0 && third_exp_ == 0; }

  Rational to_rational() const;

  ExactScalar operator-() const { return ExactScalar(-num_, two_exp_, third_exp_); }
  ExactScalar abs() const { return num_ < 0 ? -*this : *this; }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  /// Exact division; throws SchemaError when the result is not 3-smooth.
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);

  ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
  ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
  ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.num_ == b.num_ && a.two_exp_ == b.two_exp_ && a.third_exp_ == b.third_exp_;
  }
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b);

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

private:
  void canonicalize();

  BigInt num_;
  unsigned two_exp_;
  unsigned third_exp_;
};

/// min/max by value.
inline const ExactScalar& min(const ExactScalar& a, const ExactScalar& b) { return b < a ? b : a; }
inline const ExactScalar& max(const ExactScalar& a, const ExactScalar& b) { return a < b ? b : a; }

}  // namespace wrand
