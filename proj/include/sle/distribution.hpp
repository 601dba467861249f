#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sle/coefficients.hpp"
#include "sle/piecewise_polynomial.hpp"

namespace sle {

/// Exact density of the scaled largest eigenvalue on [1, K], one polynomial
/// per interval [K/(m+1), K/m); on that interval only the terms i <= m are
/// switched on.
PiecewisePolynomial build_sle_pdf(const CoefficientTable& table);

/// Exact CDF on the same breakpoints. Each (i, j) term contributes
/// C(y) - C(1) while y < K/i and the frozen C(K/i) - C(1) afterwards.
PiecewisePolynomial build_sle_cdf(const CoefficientTable& table);

/// Distribution of X = lambda_max / (tr R / K) for a K x K complex Wishart
/// matrix with N degrees of freedom. Construction rejects tables whose
/// mass is not exactly one (ConsistencyError).
class SleDistribution {
 public:
  explicit SleDistribution(CoefficientTable table);

  int K() const { return table_.K(); }
  int N() const { return table_.N(); }
  const CoefficientTable& table() const { return table_; }
  const PiecewisePolynomial& pdf() const { return pdf_; }
  const PiecewisePolynomial& cdf() const { return cdf_; }

  double density(double x) const { return pdf_(x); }
  double probability_below(double x) const { return cdf_(x); }

 private:
  CoefficientTable table_;
  PiecewisePolynomial pdf_;
  PiecewisePolynomial cdf_;
};

/// Bisection bracket tolerance and iteration cap for quantile().
inline constexpr double kQuantileTolerance = 1e-12;
inline constexpr int kQuantileMaxIterations = 200;

/// y in [1, K] with F(y) = p; 0 -> 1 and 1 -> K.
double quantile(const SleDistribution& d, double p);

/// t with P(X > t) = alpha, for alpha in (0, 1).
double threshold_for_false_alarm(const SleDistribution& d, double alpha);

/// E[X^m], exact.
Rational sle_moment(const SleDistribution& d, int m);

/// E[lambda_1^(z-1)] = sum c_{i,j} (z+j-1)! / i^(z+j), z >= 1.
Rational lambda1_moment(const CoefficientTable& table, int z);

/// E[T^(z-1)] = (z+KN-2)! / ((KN-1)! K^(z-1)) for the normalised trace.
Rational trace_moment(int K, int N, int z);

/// f_T(x) = K^(KN) / (KN-1)! x^(KN-1) exp(-K x), evaluated in log space.
/// Returns 0 for x <= 0.
double trace_pdf_eval(int K, int N, double x);

/// Normalised trace T = tr(R)/K, a Gamma(KN, 1/K) variable.
class TraceDistribution {
 public:
  TraceDistribution(int K, int N);
  double pdf(double x) const { return trace_pdf_eval(K_, N_, x); }
  Rational moment(int z) const { return trace_moment(K_, N_, z); }
  double mode() const;

 private:
  int K_;
  int N_;
};

/// Shortest decimal string that round-trips to the same double.
std::string format_shortest(double value);

/// `points` uniform abscissae on [1, K] merged with every breakpoint K/i.
std::vector<double> default_grid(int K, int points);

/// CSV with header `x,pdf,cdf`, one row per grid point.
void write_distribution_csv(std::ostream& os, const SleDistribution& d,
                            std::span<const double> grid);

}  // namespace sle
