#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "wrand/errors.hpp"

namespace wrand {

/// Polynomial with non-negative integer coefficients, evaluated exactly on
/// non-negative integers. Non-negative coefficients make it non-decreasing,
/// which the precision-polynomial contracts require.
class Polynomial {
public:
  Polynomial() : coeffs_{0} {}
  Polynomial(std::initializer_list<std::int64_t> coeffs) : coeffs_(coeffs) { validate(); }
  explicit Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { validate(); }

  static Polynomial constant(std::int64_t c) { return Polynomial{c}; }
  /// a + b*x
  static Polynomial affine(std::int64_t a, std::int64_t b) { return Polynomial{a, b}; }

  std::int64_t operator()(std::int64_t x) const {
    if (x < 0) throw SchemaError("polynomial evaluated at negative argument");
    std::int64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// this(inner(x)), exact.
  Polynomial compose(const Polynomial& inner) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<std::int64_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Polynomial(std::move(c));
  }

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

private:
  void validate() {
    if (coeffs_.empty()) coeffs_ = {0};
    for (auto c : coeffs_)
      if (c < 0) throw SchemaError("precision polynomials must have non-negative coefficients");
  }

  std::vector<std::int64_t> coeffs_;
};

inline Polynomial Polynomial::compose(const Polynomial& inner) const {
  // Horner on polynomials.
  Polynomial acc = Polynomial::constant(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    std::vector<std::int64_t> next(acc.coeffs_.size() + inner.coeffs_.size(), 0);
    // acc * inner
    std::vector<std::int64_t> prod(acc.coeffs_.size() + inner.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < acc.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < inner.coeffs_.size(); ++j)
        prod[i + j] += acc.coeffs_[i] * inner.coeffs_[j];
    prod.resize(std::max<std::size_t>(prod.size(), 1), 0);
    prod[0] += *it;
    acc = Polynomial(std::move(prod));
  }
  return acc;
}

}  // namespace wrand
