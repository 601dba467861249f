#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sle/distribution.hpp"
#include "sle/errors.hpp"
#include "test_support.hpp"

using namespace sle;

namespace {

Rational q(long num, long den = 1) { return Rational(mpz_class(num), mpz_class(den)); }

Polynomial poly(std::initializer_list<long> coeffs) {
  std::vector<Rational> out;
  for (long c : coeffs) out.emplace_back(c);
  return Polynomial(std::move(out));
}

const SleDistribution& k2n2() {
  static const SleDistribution d(closed_form_k2(2));
  return d;
}

// Exact E[X^m] for K=N=2: int_0^1 3 u^2 (u+1)^m du = 3 sum_k C(m,k) / (k+3).
Rational k2n2_moment_oracle(int m) {
  Rational total;
  mpz_class binom = 1;
  for (int k = 0; k <= m; ++k) {
    total += Rational(binom) * q(3, k + 3);
    binom = binom * (m - k) / (k + 1);
  }
  return total;
}

std::vector<double> chebyshev_points(double lo, double hi, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    const double c = std::cos(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * count));
    out.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * c);
  }
  return out;
}

}  // namespace

TEST_CASE("K=2 N=2 closed-case analytics") {
  const auto& d = k2n2();
  REQUIRE(d.pdf().segments().size() == 1);
  CHECK(d.pdf().segments()[0] == poly({3, -6, 3}));
  CHECK(d.cdf().segments()[0] == poly({-1, 3, -3, 1}));
  CHECK(d.density(1.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(d.density(1.0) == 0.0);
  CHECK(d.density(2.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(d.probability_below(2.0) == 1.0);
  CHECK(d.probability_below(0.5) == 0.0);
  CHECK(d.density(0.5) == 0.0);
  CHECK(d.density(2.5) == 0.0);
  CHECK(d.probability_below(7.0) == 1.0);
  CHECK_THROWS_AS(d.density(std::nan("")), DomainError);
}

TEST_CASE("quantile and threshold") {
  const auto& d = k2n2();
  CHECK(std::fabs(quantile(d, 0.5) - (1.0 + std::cbrt(0.5))) < 1e-10);
  CHECK(quantile(d, 0.0) == 1.0);
  CHECK(quantile(d, 1.0) == 2.0);
  CHECK_THROWS_AS(quantile(d, -0.1), DomainError);
  CHECK_THROWS_AS(quantile(d, 1.5), DomainError);
  CHECK(threshold_for_false_alarm(d, 0.5) == quantile(d, 0.5));
  CHECK(threshold_for_false_alarm(d, 0.001) ==
        doctest::Approx(1.0 + std::cbrt(0.999)).epsilon(1e-11));
  CHECK(threshold_for_false_alarm(d, 1.0 - 1e-9) < 1.0 + 1e-2);
  CHECK_THROWS_AS(threshold_for_false_alarm(d, 0.0), DomainError);
  CHECK_THROWS_AS(threshold_for_false_alarm(d, 1.0), DomainError);
}

TEST_CASE("exact moments for K=2 N=2") {
  const auto& d = k2n2();
  CHECK(sle_moment(d, 0) == q(1));
  CHECK(sle_moment(d, 1) == q(7, 4));
  CHECK(sle_moment(d, 2) == q(31, 10));
  for (int m = 0; m <= 8; ++m) CHECK(sle_moment(d, m) == k2n2_moment_oracle(m));
  CHECK_THROWS_AS(sle_moment(d, -1), DomainError);

  CHECK(lambda1_moment(d.table(), 1) == q(1));
  CHECK(lambda1_moment(d.table(), 2) == q(7, 2));
  CHECK(lambda1_moment(d.table(), 2) == sle_moment(d, 1) * trace_moment(2, 2, 2));
  CHECK_THROWS_AS(lambda1_moment(d.table(), 0), DomainError);
}

TEST_CASE("trace distribution") {
  for (int K = 1; K <= 5; ++K) {
    for (int N = 1; N <= 7; ++N) {
      CHECK(trace_moment(K, N, 1) == q(1));
      CHECK(trace_moment(K, N, 2) == q(N));
    }
  }
  CHECK(trace_moment(2, 2, 3) == q(5, 1) / q(1, 1));  // E[T^2] = (KN)(KN+1)/K^2 = 20/4
  CHECK_THROWS_AS(trace_moment(2, 2, 0), DomainError);

  CHECK(trace_pdf_eval(1, 1, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(trace_pdf_eval(2, 3, 0.0) == 0.0);
  CHECK(trace_pdf_eval(2, 3, -1.0) == 0.0);
  CHECK(trace_pdf_eval(4, 500, 500.0) > 0.0);  // no overflow

  const double integral = testing::adaptive_simpson(
      [](double x) { return trace_pdf_eval(2, 2, x); }, 0.0, 40.0, 1e-15);
  CHECK(std::fabs(integral - 1.0) < 1e-12);

  for (auto [K, N] : std::vector<std::pair<int, int>>{{2, 2}, {3, 10}, {4, 100}}) {
    const TraceDistribution t(K, N);
    const double mode = t.mode();
    CHECK(mode == doctest::Approx((K * N - 1.0) / K));
    CHECK(t.pdf(mode) > t.pdf(mode * (1 + 1e-3)));
    CHECK(t.pdf(mode) > t.pdf(mode * (1 - 1e-3)));
  }
}

TEST_CASE("piecewise structure for larger K") {
  for (auto [K, N] : std::vector<std::pair<int, int>>{{3, 5}, {4, 10}, {5, 6}}) {
    const SleDistribution d(compute_coefficients(K, N, Engine::automatic));
    const auto& bps = d.pdf().breakpoints();
    REQUIRE(bps.size() == static_cast<std::size_t>(K));
    CHECK(bps.front() == q(1));
    CHECK(bps.back() == q(K));
    for (int t = 0; t + 1 < K; ++t) CHECK(bps[t] == q(K, K - t));
    CHECK(d.pdf().integral() == q(1));
    CHECK(d.cdf().evaluate(q(1)).is_zero());
    CHECK(d.cdf().evaluate(q(K)) == q(1));
    const PiecewisePolynomial derived = d.cdf().derivative();
    CHECK(derived.segments() == d.pdf().segments());
    // continuity of the CDF across interior breakpoints
    for (std::size_t t = 1; t + 1 < bps.size(); ++t) {
      CHECK(d.cdf().segments()[t - 1].evaluate(bps[t]) ==
            d.cdf().segments()[t].evaluate(bps[t]));
    }
  }
}

TEST_CASE("pdf nonnegative at Chebyshev points (exact)") {
  for (auto [K, N] : std::vector<std::pair<int, int>>{{2, 10}, {3, 10}, {4, 10}, {6, 6}}) {
    const SleDistribution d(compute_coefficients(K, N, Engine::automatic));
    const auto& bps = d.pdf().breakpoints();
    for (std::size_t t = 0; t + 1 < bps.size(); ++t) {
      for (double x : chebyshev_points(bps[t].to_double(), bps[t + 1].to_double(), 64)) {
        const Rational exact_x{mpq_class(x)};
        CHECK(d.pdf().segments()[t].evaluate(exact_x).sign() >= 0);
        CHECK(d.density(x) >= -1e-30);
      }
    }
  }
}

TEST_CASE("floating evaluation agrees with exact evaluation") {
  for (auto [K, N] : std::vector<std::pair<int, int>>{{3, 10}, {6, 6}, {4, 40}}) {
    const SleDistribution d(compute_coefficients(K, N, Engine::automatic));
    for (int k = 0; k <= 200; ++k) {
      const double x = 1.0 + (K - 1.0) * k / 200.0;
      const Rational exact_x{mpq_class(x)};
      CHECK(std::fabs(d.density(x) - d.pdf().evaluate(exact_x).to_double()) < 1e-12);
      CHECK(std::fabs(d.probability_below(x) - d.cdf().evaluate(exact_x).to_double()) <
            1e-13);
    }
  }
}

TEST_CASE("quantile inverts the CDF where the density is not negligible") {
  for (auto [K, N] : std::vector<std::pair<int, int>>{{2, 2}, {3, 10}, {4, 10}, {6, 6}}) {
    const SleDistribution d(compute_coefficients(K, N, Engine::automatic));
    int checked = 0;
    for (int k = 1; k < 500; ++k) {
      const double y = 1.0 + (K - 1.0) * k / 500.0;
      if (d.density(y) < 1e-3) continue;
      CHECK(std::fabs(quantile(d, d.probability_below(y)) - y) < 1e-10);
      ++checked;
    }
    CHECK(checked > 20);
  }
}

TEST_CASE("Mellin product identity") {
  for (auto [K, N] : std::vector<std::pair<int, int>>{{2, 2}, {2, 5}, {3, 4}, {4, 6}, {5, 5}}) {
    const SleDistribution d(compute_coefficients(K, N, Engine::automatic));
    for (int z = 1; z <= 6; ++z) {
      CHECK(lambda1_moment(d.table(), z) == sle_moment(d, z - 1) * trace_moment(K, N, z));
    }
  }
}

TEST_CASE("scaled tables are rejected") {
  CoefficientTable t = closed_form_k2(4);
  for (int i = 1; i <= 2; ++i) {
    for (int j = t.j_min(); j <= t.j_max(i); ++j) t.set(i, j, t.at(i, j) * q(3, 2));
  }
  CHECK_THROWS_AS(SleDistribution{t}, ConsistencyError);
}

TEST_CASE("piecewise polynomial validation and conventions") {
  using Kind = PiecewisePolynomial::Kind;
  CHECK_THROWS_AS(PiecewisePolynomial(Kind::density, {q(1), q(1)}, {poly({1})}), DomainError);
  CHECK_THROWS_AS(PiecewisePolynomial(Kind::density, {q(1), q(2)}, {}), DomainError);
  // right-continuous at the interior breakpoint
  const PiecewisePolynomial step(Kind::density, {q(0), q(1), q(2)}, {poly({1}), poly({5})});
  CHECK(step.evaluate(q(1)) == q(5));
  CHECK(step(1.0) == 5.0);
  CHECK(step(2.0) == 5.0);
  CHECK(step.segment_index(q(2)) == 1);
  CHECK(step.integral() == q(6));
}

TEST_CASE("CSV export and grid") {
  const auto grid = default_grid(4, 7);
  CHECK(grid.front() == 1.0);
  CHECK(grid.back() == 4.0);
  for (double b : {4.0 / 3.0, 2.0}) {
    CHECK(std::find(grid.begin(), grid.end(), b) != grid.end());
  }
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK_THROWS_AS(default_grid(4, 1), DomainError);

  std::ostringstream os;
  const std::vector<double> pts{1.0, 1.5, 2.0};
  write_distribution_csv(os, k2n2(), pts);
  CHECK(os.str() == "x,pdf,cdf\n1,0,0\n1.5,0.75,0.125\n2,3,1\n");

  for (double v : {0.1, 1.0 / 3.0, 2.5e-300, 1e22}) {
    CHECK(std::stod(format_shortest(v)) == v);
  }
  CHECK(format_shortest(0.1) == "0.1");
}
