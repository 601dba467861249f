#pragma once

#include <variant>
#include <vector>

#include "sle/big_float.hpp"
#include "sle/polynomial.hpp"

namespace sle {

/// Floating-point evaluator for one exact polynomial segment.
///
/// The polynomial is re-expanded exactly around the segment midpoint and the
/// coefficients are held in MPFR with enough bits, given the term-magnitude
/// bound sum |b_k| h^k over the half-width h, that the absolute evaluation
/// error stays below 2^-112. Segments whose bound is already below that use
/// plain doubles.
class SegmentEvaluator {
 public:
  SegmentEvaluator(const Polynomial& p, const Rational& lo, const Rational& hi);

  double operator()(double x) const;
  bool extended() const { return std::holds_alternative<Extended>(coefficients_); }
  mpfr_prec_t precision() const;

 private:
  struct Extended {
    BigFloat center;
    std::vector<BigFloat> coefficients;
  };
  double center_;
  std::variant<std::vector<double>, Extended> coefficients_;
};

/// Exact polynomial per interval [b_t, b_{t+1}) with a closed last interval.
class PiecewisePolynomial {
 public:
  enum class Kind { density, cumulative };

  PiecewisePolynomial(Kind kind, std::vector<Rational> breakpoints,
                      std::vector<Polynomial> segments);

  Kind kind() const { return kind_; }
  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Polynomial>& segments() const { return segments_; }
  const Rational& lower() const { return breakpoints_.front(); }
  const Rational& upper() const { return breakpoints_.back(); }

  /// Segment index containing x (right-continuous; x == upper maps to the
  /// last segment). x must lie in [lower, upper].
  std::size_t segment_index(const Rational& x) const;
  std::size_t segment_index(double x) const;

  /// Exact value. Outside the support a density is 0 and a cumulative curve
  /// is clamped to its boundary values.
  Rational evaluate(const Rational& x) const;
  /// Floating value with the same conventions; NaN raises DomainError.
  double operator()(double x) const;

  /// Exact integral over the whole support.
  Rational integral() const;
  /// Exact integral of x^m times the curve over the support.
  Rational moment(int m) const;
  /// Segment-wise derivative, as a density.
  PiecewisePolynomial derivative() const;

  /// True if any segment needs extended precision.
  bool uses_extended_precision() const;

 private:
  Kind kind_;
  std::vector<Rational> breakpoints_;
  std::vector<Polynomial> segments_;
  std::vector<double> float_breakpoints_;
  double lower_value_ = 0.0;
  double upper_value_ = 0.0;
  std::vector<SegmentEvaluator> evaluators_;
};

double eval(const PiecewisePolynomial& pp, double x);

}  // namespace sle
