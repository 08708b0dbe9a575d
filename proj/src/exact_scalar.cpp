#include "wrand/exact_scalar.hpp"

#include <ostream>
#include <sstream>

namespace wrand {

namespace {

BigInt pow_int(const BigInt& base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

BigInt parse_bigint(const std::string& text) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    neg = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw SchemaError("not an integer: '" + text + "'");
  BigInt v = 0;
  for (; pos < text.size(); ++pos) {
    if (text[pos] < '0' || text[pos] > '9')
      throw SchemaError("not an integer: '" + text + "'");
    v = v * 10 + (text[pos] - '0');
  }
  return neg ? -v : v;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return SchemaError("not a rational: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt p = parse_bigint(text.substr(0, slash));
    BigInt q = parse_bigint(text.substr(slash + 1));
    if (q == 0) throw bad();
    return Rational(p, q);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    unsigned frac = static_cast<unsigned>(text.size() - dot - 1);
    return Rational(parse_bigint(digits), pow_int(10, frac));
  }
  return Rational(parse_bigint(text));
}

std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << "/" << denominator(x);
  return os.str();
}

void ExactScalar::canonicalize() {
  if (num_ == 0) {
    two_exp_ = 0;
    third_exp_ = 0;
    return;
  }
  while (third_exp_ > 0 && num_ % 3 == 0) {
    num_ /= 3;
    --third_exp_;
  }
  while (two_exp_ > 0 && (num_ & 1) == 0) {
    num_ >>= 1;
    --two_exp_;
  }
}

ExactScalar ExactScalar::pow2(int k) {
  if (k >= 0) return ExactScalar(BigInt(1) << static_cast<unsigned>(k), 0);
  return ExactScalar(BigInt(1), static_cast<unsigned>(-k));
}

ExactScalar ExactScalar::from_rational(const Rational& x) {
  BigInt den = denominator(x);
  unsigned two = 0, third = 0;
  while ((den & 1) == 0) {
    den >>= 1;
    ++two;
  }
  while (den % 3 == 0) {
    den /= 3;
    ++third;
  }
  if (den != 1)
    throw SchemaError("rational " + wrand::to_string(x) + " does not have a 3-smooth denominator");
  return ExactScalar(numerator(x), two, third);
}

Rational ExactScalar::to_rational() const {
  return Rational(num_, (BigInt(1) << two_exp_) * pow_int(3, third_exp_));
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  unsigned two = std::max(a.two_exp_, b.two_exp_);
  unsigned third = std::max(a.third_exp_, b.third_exp_);
  BigInt lhs = a.num_ * pow_int(3, third - a.third_exp_) << (two - a.two_exp_);
  BigInt rhs = b.num_ * pow_int(3, third - b.third_exp_) << (two - b.two_exp_);
  return ExactScalar(lhs + rhs, two, third);
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  return ExactScalar(a.num_ * b.num_, a.two_exp_ + b.two_exp_, a.third_exp_ + b.third_exp_);
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
  if (b.is_zero()) throw SchemaError("division by zero");
  return ExactScalar::from_rational(a.to_rational() / b.to_rational());
}

std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
  // Compare a.num * db <=> b.num * da on the common denominator.
  unsigned two = std::max(a.two_exp_, b.two_exp_);
  unsigned third = std::max(a.third_exp_, b.third_exp_);
  BigInt lhs = a.num_ * pow_int(3, third - a.third_exp_) << (two - a.two_exp_);
  BigInt rhs = b.num_ * pow_int(3, third - b.third_exp_) << (two - b.two_exp_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExactScalar::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) {
  os << x.num();
  if (x.two_exp() > 0 || x.third_exp() > 0) {
    os << "/";
    BigInt den = (BigInt(1) << x.two_exp()) * pow_int(3, x.third_exp());
    os << den;
  }
  return os;
}

}  // namespace wrand
