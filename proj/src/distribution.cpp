#include "sle/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "sle/errors.hpp"

namespace sle {

namespace {

// Exponent KN - j - 2 of (K/i - x) in the density terms.
int gate_exponent(const CoefficientTable& table, int j) {
  const int n = table.K() * table.N() - j - 2;
  if (n < 0) {
    throw ConsistencyError("negative gate exponent for j = " + std::to_string(j));
  }
  return n;
}

Rational leading_factor(const CoefficientTable& table) {
  const int kn = table.K() * table.N();
  return factorial(kn - 1) / pow(Rational(table.K()), kn - 1);
}

std::vector<Rational> support_breakpoints(int K) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(K));
  for (int i = K; i >= 1; --i) out.emplace_back(mpz_class(K), mpz_class(i));
  return out;
}

// sum_j i^n / n! c_{i,j} x^j (K/i - x)^n for one exponential index i.
Polynomial density_part(const CoefficientTable& table, int i) {
  const Rational gate = Rational(mpz_class(table.K()), mpz_class(i));
  Polynomial out;
  for (int j = table.j_min(); j <= table.j_max(i); ++j) {
    const Rational& c = table.at(i, j);
    if (c.is_zero()) continue;
    const int n = gate_exponent(table, j);
    const Rational scale = c * pow(Rational(i), n) * reciprocal_factorial(n);
    out += (Polynomial::binomial_power(gate, Rational(-1), n) * scale).times_power(j);
  }
  return out;
}

// sum_j i^n c_{i,j} C_{i,j}(y) with
// C(y) = (K/i)^n sum_{q=0}^{n+1} (-i/K)^q / ((j+q+1) (n-q)! q!) y^(q+j+1).
// The q = n+1 term carries 1/(-1)! = 0.
Polynomial cumulative_part(const CoefficientTable& table, int i) {
  const Rational gate = Rational(mpz_class(table.K()), mpz_class(i));
  const Rational step = -gate.inverse();
  Polynomial out;
  for (int j = table.j_min(); j <= table.j_max(i); ++j) {
    const Rational& c = table.at(i, j);
    if (c.is_zero()) continue;
    const int n = gate_exponent(table, j);
    std::vector<Rational> coeffs(static_cast<std::size_t>(n + j + 3));
    Rational step_pow = 1;
    for (int q = 0; q <= n + 1; ++q) {
      coeffs[static_cast<std::size_t>(q + j + 1)] =
          step_pow * reciprocal_factorial(n - q) * reciprocal_factorial(q) /
          Rational(j + q + 1);
      step_pow *= step;
    }
    out += Polynomial(std::move(coeffs)) * (c * pow(Rational(i), n) * pow(gate, n));
  }
  return out;
}

}  // namespace

PiecewisePolynomial build_sle_pdf(const CoefficientTable& table) {
  const int K = table.K();
  const Rational lead = leading_factor(table);
  // Interval t covers [K/(K-t), K/(K-t-1)) where terms i <= K-t-1 are on.
  std::vector<Polynomial> prefix(static_cast<std::size_t>(K));
  for (int i = 1; i < K; ++i) {
    prefix[static_cast<std::size_t>(i)] = prefix[static_cast<std::size_t>(i - 1)] +
                                          density_part(table, i);
  }
  std::vector<Polynomial> segments;
  segments.reserve(static_cast<std::size_t>(K - 1));
  for (int t = 0; t + 1 < K; ++t) {
    segments.push_back(prefix[static_cast<std::size_t>(K - t - 1)] * lead);
  }
  return PiecewisePolynomial(PiecewisePolynomial::Kind::density, support_breakpoints(K),
                             std::move(segments));
}

PiecewisePolynomial build_sle_cdf(const CoefficientTable& table) {
  const int K = table.K();
  const Rational lead = leading_factor(table);
  const Rational one = 1;

  std::vector<Polynomial> running(static_cast<std::size_t>(K + 1));  // sum_{i<=m} H_i - H_i(1)
  std::vector<Rational> frozen(static_cast<std::size_t>(K + 2));     // sum_{i>m} H_i(K/i) - H_i(1)
  std::vector<Rational> frozen_each(static_cast<std::size_t>(K + 1));
  for (int i = 1; i <= K; ++i) {
    const Polynomial h = cumulative_part(table, i);
    const Rational at_one = h.evaluate(one);
    running[static_cast<std::size_t>(i)] = running[static_cast<std::size_t>(i - 1)] + h -
                                           Polynomial::constant(at_one);
    frozen_each[static_cast<std::size_t>(i)] =
        h.evaluate(Rational(mpz_class(K), mpz_class(i))) - at_one;
  }
  for (int m = K; m >= 1; --m) {
    frozen[static_cast<std::size_t>(m)] =
        frozen[static_cast<std::size_t>(m + 1)] + frozen_each[static_cast<std::size_t>(m)];
  }

  std::vector<Polynomial> segments;
  segments.reserve(static_cast<std::size_t>(K - 1));
  for (int t = 0; t + 1 < K; ++t) {
    const int m = K - t - 1;
    segments.push_back((running[static_cast<std::size_t>(m)] +
                        Polynomial::constant(frozen[static_cast<std::size_t>(m + 1)])) *
                       lead);
  }
  return PiecewisePolynomial(PiecewisePolynomial::Kind::cumulative, support_breakpoints(K),
                             std::move(segments));
}

SleDistribution::SleDistribution(CoefficientTable table)
    : table_((table.verify_normalization(), std::move(table))),
      pdf_(build_sle_pdf(table_)),
      cdf_(build_sle_cdf(table_)) {
  if (cdf_.evaluate(cdf_.lower()) != Rational(0) ||
      cdf_.evaluate(cdf_.upper()) != Rational(1)) {
    throw ConsistencyError("SLE CDF does not run from 0 to 1 over [1, K]");
  }
}

double quantile(const SleDistribution& d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("quantile: probability must lie in [0, 1]");
  }
  if (p == 0.0) return 1.0;
  if (p == 1.0) return static_cast<double>(d.K());
  double lo = 1.0;
  double hi = static_cast<double>(d.K());
  for (int iter = 0; iter < kQuantileMaxIterations && hi - lo > kQuantileTolerance; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (d.probability_below(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double threshold_for_false_alarm(const SleDistribution& d, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("threshold_for_false_alarm: alpha must lie in (0, 1)");
  }
  return quantile(d, 1.0 - alpha);
}

Rational sle_moment(const SleDistribution& d, int m) {
  if (m < 0) {
    throw DomainError("sle_moment: order must be nonnegative");
  }
  return d.pdf().moment(m);
}

Rational lambda1_moment(const CoefficientTable& table, int z) {
  if (z < 1) {
    throw DomainError("lambda1_moment: z must be at least 1");
  }
  Rational total;
  for (int i = 1; i <= table.K(); ++i) {
    for (int j = table.j_min(); j <= table.j_max(i); ++j) {
      const Rational& c = table.at(i, j);
      if (c.is_zero()) continue;
      total += c * factorial(z + j - 1) / pow(Rational(i), z + j);
    }
  }
  return total;
}

Rational trace_moment(int K, int N, int z) {
  if (K < 1 || N < 1) {
    throw DomainError("trace_moment: K and N must be positive");
  }
  if (z < 1) {
    throw DomainError("trace_moment: z must be at least 1");
  }
  const long kn = static_cast<long>(K) * N;
  return factorial(z + kn - 2) / (factorial(kn - 1) * pow(Rational(K), z - 1));
}

double trace_pdf_eval(int K, int N, double x) {
  if (K < 1 || N < 1) {
    throw DomainError("trace_pdf_eval: K and N must be positive");
  }
  if (std::isnan(x)) {
    throw DomainError("trace_pdf_eval: NaN argument");
  }
  if (x <= 0.0) {
    return 0.0;
  }
  const double kn = static_cast<double>(K) * N;
  const double log_pdf = kn * std::log(static_cast<double>(K)) - std::lgamma(kn) +
                         (kn - 1.0) * std::log(x) - K * x;
  return std::exp(log_pdf);
}

TraceDistribution::TraceDistribution(int K, int N) : K_(K), N_(N) {
  if (K < 1 || N < 1) {
    throw DomainError("TraceDistribution: K and N must be positive");
  }
}

double TraceDistribution::mode() const {
  return (static_cast<double>(K_) * N_ - 1.0) / K_;
}

std::string format_shortest(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::vector<double> default_grid(int K, int points) {
  if (K < 2) {
    throw DomainError("default_grid: K must be at least 2");
  }
  if (points < 2) {
    throw DomainError("default_grid: need at least 2 points");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points + K));
  const double width = static_cast<double>(K) - 1.0;
  for (int k = 0; k < points; ++k) {
    grid.push_back(k + 1 == points ? static_cast<double>(K)
                                   : 1.0 + width * k / (points - 1));
  }
  for (int i = 1; i <= K; ++i) {
    grid.push_back(Rational(mpz_class(K), mpz_class(i)).to_double());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

void write_distribution_csv(std::ostream& os, const SleDistribution& d,
                            std::span<const double> grid) {
  os << "x,pdf,cdf\n";
  for (const double x : grid) {
    os << format_shortest(x) << ',' << format_shortest(d.density(x)) << ','
       << format_shortest(d.probability_below(x)) << '\n';
  }
}

}  // namespace sle
