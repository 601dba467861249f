#include "sle/exp_poly_sum.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sle/big_float.hpp"
#include "sle/errors.hpp"

namespace sle {

ExpPolySum ExpPolySum::term(int rate, const Polynomial& p) {
  if (rate < 0) {
    throw DomainError("ExpPolySum: negative exponential rate");
  }
  ExpPolySum out;
  out.add_term(rate, p);
  return out;
}

Polynomial ExpPolySum::polynomial(int rate) const {
  const auto it = terms_.find(rate);
  return it == terms_.end() ? Polynomial{} : it->second;
}

int ExpPolySum::max_rate() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first;
}

ExpPolySum ExpPolySum::times_exp_monomial(int rate, int power) const {
  if (rate < 0) {
    throw DomainError("ExpPolySum: negative exponential rate");
  }
  ExpPolySum out;
  for (const auto& [m, p] : terms_) {
    out.terms_.emplace(m + rate, p.times_power(power));
  }
  return out;
}

double ExpPolySum::evaluate(double x) const {
  if (std::isnan(x)) {
    throw DomainError("ExpPolySum::evaluate: NaN argument");
  }
  if (terms_.empty()) {
    return 0.0;
  }
  const double log2_x = std::log2(std::fabs(x));
  double log2_bound = -std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  for (const auto& [m, p] : terms_) {
    const auto coeffs = p.coefficients();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero() || (x == 0.0 && k > 0)) continue;
      const double l = coeffs[k].log2_abs() +
                       (k > 0 ? static_cast<double>(k) * log2_x : 0.0) -
                       m * x * std::numbers::log2e;
      log2_bound = std::max(log2_bound, l);
      ++count;
    }
  }
  if (count == 0) {
    return 0.0;
  }
  log2_bound += std::log2(static_cast<double>(count));
  const mpfr_prec_t prec = precision_for(log2_bound, 256);

  const BigFloat xv(x, prec);
  BigFloat total(prec);
  BigFloat poly(prec);
  BigFloat scratch(prec);
  for (const auto& [m, p] : terms_) {
    mpfr_set_zero(poly.get(), 1);
    const auto coeffs = p.coefficients();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      mpfr_mul(poly.get(), poly.get(), xv.get(), MPFR_RNDN);
      mpfr_add_q(poly.get(), poly.get(), it->value().get_mpq_t(), MPFR_RNDN);
    }
    mpfr_mul_si(scratch.get(), xv.get(), -m, MPFR_RNDN);
    mpfr_exp(scratch.get(), scratch.get(), MPFR_RNDN);
    mpfr_mul(poly.get(), poly.get(), scratch.get(), MPFR_RNDN);
    mpfr_add(total.get(), total.get(), poly.get(), MPFR_RNDN);
  }
  return total.to_double();
}

ExpPolySum& ExpPolySum::operator+=(const ExpPolySum& rhs) {
  for (const auto& [m, p] : rhs.terms_) add_term(m, p);
  return *this;
}

ExpPolySum& ExpPolySum::operator-=(const ExpPolySum& rhs) {
  for (const auto& [m, p] : rhs.terms_) add_term(m, -p);
  return *this;
}

ExpPolySum& ExpPolySum::operator*=(const Rational& scale) {
  if (scale.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, p] : terms_) p *= scale;
  return *this;
}

ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b) {
  ExpPolySum out;
  for (const auto& [ma, pa] : a.terms_) {
    for (const auto& [mb, pb] : b.terms_) {
      out.add_term(ma + mb, pa * pb);
    }
  }
  return out;
}

void ExpPolySum::add_term(int rate, const Polynomial& p) {
  if (p.is_zero()) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(rate, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
}

ExpPolySum exact_quotient(const ExpPolySum& dividend, const ExpPolySum& divisor) {
  if (divisor.is_zero()) {
    throw DomainError("exact_quotient: zero divisor");
  }
  // Division by leading exp(-x)-degree, with Q[x] coefficients divided exactly.
  const int lead_rate = divisor.max_rate();
  const Polynomial lead = divisor.polynomial(lead_rate);
  ExpPolySum remainder = dividend;
  ExpPolySum quotient;
  while (!remainder.is_zero()) {
    const int rate = remainder.max_rate();
    if (rate < lead_rate) {
      throw ConsistencyError("exact_quotient: divisor does not divide dividend");
    }
    const ExpPolySum step =
        ExpPolySum::term(rate - lead_rate, exact_quotient(remainder.polynomial(rate), lead));
    quotient += step;
    remainder -= divisor * step;
  }
  return quotient;
}

Rational exp_poly_integral_0_inf(const ExpPolySum& f) {
  if (!f.polynomial(0).is_zero()) {
    throw DomainError("exp_poly_integral_0_inf: nonzero rate-0 term diverges");
  }
  Rational total;
  for (const auto& [m, p] : f.terms()) {
    const Rational rate(m);
    Rational rate_pow = rate;  // m^(k+1)
    Rational k_fact = 1;
    const auto coeffs = p.coefficients();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (k > 0) {
        k_fact *= Rational(k);
        rate_pow *= rate;
      }
      if (!coeffs[k].is_zero()) {
        total += coeffs[k] * k_fact / rate_pow;
      }
    }
  }
  return total;
}

}  // namespace sle
