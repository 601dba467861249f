#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sle/rational.hpp"

namespace sle {

/// Dense univariate polynomial over the rationals; coefficient k multiplies
/// x^k. Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, int power);
  /// (a + b x)^n expanded by the binomial theorem.
  static Polynomial binomial_power(const Rational& a, const Rational& b, int n);

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  std::span<const Rational> coefficients() const { return coefficients_; }
  /// Coefficient of x^k; zero beyond the degree.
  Rational coefficient(int k) const;

  Rational evaluate(const Rational& x) const;
  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const;
  /// q(t) = p(t + shift).
  Polynomial shifted(const Rational& shift) const;
  /// x^k * p(x).
  Polynomial times_power(int k) const;
  /// Exact integral over [a, b].
  Rational integral(const Rational& a, const Rational& b) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& scale);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();

  std::vector<Rational> coefficients_;
};

/// Quotient of an exact division; raises ConsistencyError when the divisor
/// leaves a remainder and DomainError for a zero divisor.
Polynomial exact_quotient(const Polynomial& dividend, const Polynomial& divisor);

/// Product of all factors, collecting the coefficient of x^i as the nested
/// convolution sum over index splits (two- and three-factor collection
/// formulas generalised to any count).
Polynomial poly_product_collect(std::span<const Polynomial> factors);

}  // namespace sle
