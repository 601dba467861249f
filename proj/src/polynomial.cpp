#include "sle/polynomial.hpp"

#include <algorithm>
#include <utility>

#include "sle/errors.hpp"

namespace sle {

Polynomial::Polynomial(std::vector<Rational> coefficients)
    : coefficients_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::constant(const Rational& c) {
  return Polynomial(std::vector<Rational>{c});
}

Polynomial Polynomial::monomial(const Rational& c, int power) {
  if (power < 0) {
    throw DomainError("Polynomial::monomial: negative power");
  }
  std::vector<Rational> coefficients(static_cast<std::size_t>(power) + 1);
  coefficients.back() = c;
  return Polynomial(std::move(coefficients));
}

Polynomial Polynomial::binomial_power(const Rational& a, const Rational& b,
                                      int n) {
  if (n < 0) {
    throw DomainError("Polynomial::binomial_power: negative exponent");
  }
  // C(n,k) a^(n-k) b^k, built incrementally.
  std::vector<Rational> coefficients(static_cast<std::size_t>(n) + 1);
  std::vector<Rational> a_pow(static_cast<std::size_t>(n) + 1);
  a_pow[0] = 1;
  for (int k = 1; k <= n; ++k) a_pow[k] = a_pow[k - 1] * a;
  mpz_class binom = 1;
  Rational b_pow = 1;
  for (int k = 0; k <= n; ++k) {
    coefficients[k] = Rational(binom) * a_pow[n - k] * b_pow;
    binom = binom * (n - k) / (k + 1);
    b_pow *= b;
  }
  return Polynomial(std::move(coefficients));
}

Rational Polynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) {
    return Rational(0);
  }
  return coefficients_[static_cast<std::size_t>(k)];
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coefficients_.size() <= 1) {
    return {};
  }
  std::vector<Rational> out(coefficients_.size() - 1);
  for (std::size_t k = 1; k < coefficients_.size(); ++k) {
    out[k - 1] = coefficients_[k] * Rational(k);
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative() const {
  if (is_zero()) {
    return {};
  }
  std::vector<Rational> out(coefficients_.size() + 1);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    out[k + 1] = coefficients_[k] / Rational(k + 1);
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted(const Rational& shift) const {
  // Repeated synthetic division (Taylor shift), O(n^2) exact operations.
  std::vector<Rational> c = coefficients_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k > i; --k) {
      c[k - 1] += shift * c[k];
    }
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::times_power(int k) const {
  if (k < 0) {
    throw DomainError("Polynomial::times_power: negative power");
  }
  if (is_zero()) {
    return {};
  }
  std::vector<Rational> out(coefficients_.size() + static_cast<std::size_t>(k));
  std::copy(coefficients_.begin(), coefficients_.end(), out.begin() + k);
  return Polynomial(std::move(out));
}

Rational Polynomial::integral(const Rational& a, const Rational& b) const {
  const Polynomial anti = antiderivative();
  return anti.evaluate(b) - anti.evaluate(a);
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coefficients_.size() > coefficients_.size()) {
    coefficients_.resize(rhs.coefficients_.size());
  }
  for (std::size_t k = 0; k < rhs.coefficients_.size(); ++k) {
    coefficients_[k] += rhs.coefficients_[k];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coefficients_.size() > coefficients_.size()) {
    coefficients_.resize(rhs.coefficients_.size());
  }
  for (std::size_t k = 0; k < rhs.coefficients_.size(); ++k) {
    coefficients_[k] -= rhs.coefficients_[k];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scale) {
  if (scale.is_zero()) {
    coefficients_.clear();
    return *this;
  }
  for (auto& c : coefficients_) c *= scale;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) {
    return {};
  }
  const std::size_t na = a.coefficients_.size();
  const std::size_t nb = b.coefficients_.size();
  std::vector<Rational> out(na + nb - 1);
  for (std::size_t i = 0; i < na; ++i) {
    if (a.coefficients_[i].is_zero()) continue;
    for (std::size_t k = 0; k < nb; ++k) {
      out[i + k] += a.coefficients_[i] * b.coefficients_[k];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial operator-(Polynomial a) {
  for (auto& c : a.coefficients_) c = -c;
  return a;
}

void Polynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back().is_zero()) {
    coefficients_.pop_back();
  }
}

Polynomial exact_quotient(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) {
    throw DomainError("exact_quotient: zero divisor");
  }
  if (dividend.is_zero()) {
    return {};
  }
  const int dn = dividend.degree();
  const int dd = divisor.degree();
  if (dn < dd) {
    throw ConsistencyError("exact_quotient: divisor does not divide dividend");
  }
  std::vector<Rational> rem(dividend.coefficients().begin(),
                            dividend.coefficients().end());
  std::vector<Rational> quot(static_cast<std::size_t>(dn - dd) + 1);
  const Rational lead_inv = divisor.coefficients().back().inverse();
  const auto dcoef = divisor.coefficients();
  for (int k = dn - dd; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + dd)] * lead_inv;
    quot[static_cast<std::size_t>(k)] = q;
    if (q.is_zero()) continue;
    for (int t = 0; t <= dd; ++t) {
      rem[static_cast<std::size_t>(k + t)] -= q * dcoef[static_cast<std::size_t>(t)];
    }
  }
  for (int k = 0; k < dd; ++k) {
    if (!rem[static_cast<std::size_t>(k)].is_zero()) {
      throw ConsistencyError("exact_quotient: nonzero remainder");
    }
  }
  return Polynomial(std::move(quot));
}

Polynomial poly_product_collect(std::span<const Polynomial> factors) {
  if (factors.empty()) {
    throw DomainError("poly_product_collect: no factors");
  }
  // Running coefficient table: after absorbing factors[0..f], acc[i] is the
  // sum over index splits of products landing on x^i.
  Polynomial acc = factors.front();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const Polynomial& next = factors[f];
    if (acc.is_zero() || next.is_zero()) {
      return {};
    }
    const int a = acc.degree();
    const int b = next.degree();
    std::vector<Rational> out(static_cast<std::size_t>(a + b) + 1);
    for (int i = 0; i <= a + b; ++i) {
      Rational sum;
      for (int k = std::max(0, i - b); k <= std::min(i, a); ++k) {
        sum += acc.coefficient(k) * next.coefficient(i - k);
      }
      out[static_cast<std::size_t>(i)] = std::move(sum);
    }
    acc = Polynomial(std::move(out));
  }
  return acc;
}

}  // namespace sle
