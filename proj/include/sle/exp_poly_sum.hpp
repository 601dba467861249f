#pragma once

#include <map>

#include "sle/polynomial.hpp"

namespace sle {

/// Finite sum  sum_m exp(-m x) P_m(x)  with m >= 0 and rational P_m.
///
/// Since x and exp(-x) are algebraically independent this is the bivariate
/// polynomial ring Q[x, y] with y = exp(-x); the exponential rate m is the
/// y-degree. No zero polynomial is ever stored.
class ExpPolySum {
 public:
  using TermMap = std::map<int, Polynomial>;

  ExpPolySum() = default;
  explicit ExpPolySum(const Polynomial& p) : ExpPolySum(term(0, p)) {}

  static ExpPolySum term(int rate, const Polynomial& p);

  const TermMap& terms() const { return terms_; }
  /// P_m; zero if absent.
  Polynomial polynomial(int rate) const;
  bool is_zero() const { return terms_.empty(); }
  /// Largest rate present; -1 for zero.
  int max_rate() const;

  /// exp(-rate x) x^power * (*this).
  ExpPolySum times_exp_monomial(int rate, int power) const;

  /// Value at x, computed in extended precision sized from the magnitude of
  /// the individual terms and rounded to double at the end.
  double evaluate(double x) const;

  ExpPolySum& operator+=(const ExpPolySum& rhs);
  ExpPolySum& operator-=(const ExpPolySum& rhs);
  ExpPolySum& operator*=(const Rational& scale);

  friend ExpPolySum operator+(ExpPolySum a, const ExpPolySum& b) { return a += b; }
  friend ExpPolySum operator-(ExpPolySum a, const ExpPolySum& b) { return a -= b; }
  friend ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b);
  friend ExpPolySum operator*(ExpPolySum a, const Rational& s) { return a *= s; }
  friend ExpPolySum operator*(const Rational& s, ExpPolySum a) { return a *= s; }
  friend bool operator==(const ExpPolySum&, const ExpPolySum&) = default;

 private:
  void add_term(int rate, const Polynomial& p);

  TermMap terms_;
};

/// Exact quotient in Q[x, exp(-x)]; ConsistencyError when not exact.
ExpPolySum exact_quotient(const ExpPolySum& dividend, const ExpPolySum& divisor);

/// Integral over [0, inf): sum over m >= 1 and k of coeff(m,k) k! / m^(k+1).
/// DomainError if a nonzero m = 0 polynomial makes the integral diverge.
Rational exp_poly_integral_0_inf(const ExpPolySum& f);

}  // namespace sle
