#include "sle/piecewise_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sle/errors.hpp"

namespace sle {

namespace {

// Target absolute error 2^-112 per evaluation.
constexpr int kAbsoluteErrorBits = 112;

}  // namespace

SegmentEvaluator::SegmentEvaluator(const Polynomial& p, const Rational& lo,
                                   const Rational& hi) {
  const Rational center = (lo + hi) / Rational(2);
  const Rational half_width = (hi - lo) / Rational(2);
  center_ = center.to_double();
  const Polynomial local = p.shifted(center);
  const auto coeffs = local.coefficients();

  double log2_bound = -std::numeric_limits<double>::infinity();
  const double log2_h = half_width.log2_abs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    const double l = coeffs[k].log2_abs() + static_cast<double>(k) * log2_h;
    // log2(2^a + 2^b) accumulated without overflow.
    if (std::isinf(log2_bound)) {
      log2_bound = l;
    } else {
      const double hi_l = std::max(log2_bound, l);
      log2_bound = hi_l + std::log2(1.0 + std::exp2(std::min(log2_bound, l) - hi_l));
    }
  }
  if (!coeffs.empty()) {
    log2_bound += std::log2(static_cast<double>(coeffs.size()));
  }

  if (log2_bound <= -kAbsoluteErrorBits) {
    std::vector<double> values;
    values.reserve(coeffs.size());
    for (const auto& c : coeffs) values.push_back(c.to_double());
    coefficients_ = std::move(values);
    return;
  }
  const mpfr_prec_t prec = precision_for(log2_bound, kAbsoluteErrorBits);
  Extended ext{BigFloat(center, prec), {}};
  ext.coefficients.reserve(coeffs.size());
  for (const auto& c : coeffs) ext.coefficients.emplace_back(c, prec);
  coefficients_ = std::move(ext);
}

mpfr_prec_t SegmentEvaluator::precision() const {
  if (const auto* ext = std::get_if<Extended>(&coefficients_)) {
    return ext->center.precision();
  }
  return 53;
}

double SegmentEvaluator::operator()(double x) const {
  if (const auto* values = std::get_if<std::vector<double>>(&coefficients_)) {
    const double t = x - center_;
    double acc = 0.0;
    for (auto it = values->rbegin(); it != values->rend(); ++it) {
      acc = std::fma(acc, t, *it);
    }
    return acc;
  }
  const auto& ext = std::get<Extended>(coefficients_);
  const mpfr_prec_t prec = ext.center.precision();
  BigFloat t(x, prec);
  mpfr_sub(t.get(), t.get(), ext.center.get(), MPFR_RNDN);
  BigFloat acc(prec);
  for (auto it = ext.coefficients.rbegin(); it != ext.coefficients.rend(); ++it) {
    mpfr_mul(acc.get(), acc.get(), t.get(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), it->get(), MPFR_RNDN);
  }
  return acc.to_double();
}

PiecewisePolynomial::PiecewisePolynomial(Kind kind, std::vector<Rational> breakpoints,
                                         std::vector<Polynomial> segments)
    : kind_(kind), breakpoints_(std::move(breakpoints)), segments_(std::move(segments)) {
  if (breakpoints_.size() < 2 || segments_.size() + 1 != breakpoints_.size()) {
    throw DomainError("PiecewisePolynomial: need one segment per breakpoint interval");
  }
  for (std::size_t t = 0; t + 1 < breakpoints_.size(); ++t) {
    if (!(breakpoints_[t] < breakpoints_[t + 1])) {
      throw DomainError("PiecewisePolynomial: breakpoints must strictly increase");
    }
  }
  float_breakpoints_.reserve(breakpoints_.size());
  for (const auto& b : breakpoints_) float_breakpoints_.push_back(b.to_double());
  lower_value_ = segments_.front().evaluate(lower()).to_double();
  upper_value_ = segments_.back().evaluate(upper()).to_double();
  evaluators_.reserve(segments_.size());
  for (std::size_t t = 0; t < segments_.size(); ++t) {
    evaluators_.emplace_back(segments_[t], breakpoints_[t], breakpoints_[t + 1]);
  }
}

std::size_t PiecewisePolynomial::segment_index(const Rational& x) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const auto idx = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, segments_.size() - 1);
}

std::size_t PiecewisePolynomial::segment_index(double x) const {
  const auto it = std::upper_bound(float_breakpoints_.begin(), float_breakpoints_.end(), x);
  const auto idx = static_cast<std::size_t>(std::distance(float_breakpoints_.begin(), it));
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, segments_.size() - 1);
}

Rational PiecewisePolynomial::evaluate(const Rational& x) const {
  if (x < lower() || x > upper()) {
    if (kind_ == Kind::density) return Rational(0);
    return x < lower() ? segments_.front().evaluate(lower())
                       : segments_.back().evaluate(upper());
  }
  return segments_[segment_index(x)].evaluate(x);
}

double PiecewisePolynomial::operator()(double x) const {
  if (std::isnan(x)) {
    throw DomainError("PiecewisePolynomial: NaN argument");
  }
  const double lo = float_breakpoints_.front();
  const double hi = float_breakpoints_.back();
  if (kind_ == Kind::density) {
    if (x < lo || x > hi) return 0.0;
  } else {
    if (x <= lo) return lower_value_;
    if (x >= hi) return upper_value_;
  }
  return evaluators_[segment_index(x)](x);
}

Rational PiecewisePolynomial::integral() const { return moment(0); }

Rational PiecewisePolynomial::moment(int m) const {
  if (m < 0) {
    throw DomainError("PiecewisePolynomial::moment: negative order");
  }
  Rational total;
  for (std::size_t t = 0; t < segments_.size(); ++t) {
    total += segments_[t].times_power(m).integral(breakpoints_[t], breakpoints_[t + 1]);
  }
  return total;
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
  std::vector<Polynomial> out;
  out.reserve(segments_.size());
  for (const auto& s : segments_) out.push_back(s.derivative());
  return PiecewisePolynomial(Kind::density, breakpoints_, std::move(out));
}

bool PiecewisePolynomial::uses_extended_precision() const {
  return std::any_of(evaluators_.begin(), evaluators_.end(),
                     [](const SegmentEvaluator& e) { return e.extended(); });
}

double eval(const PiecewisePolynomial& pp, double x) { return pp(x); }

}  // namespace sle
