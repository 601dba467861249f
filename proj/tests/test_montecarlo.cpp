#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "sle/errors.hpp"
#include "sle/montecarlo.hpp"

using namespace sle;

TEST_CASE("complex Gaussian source has unit complex variance") {
  ComplexGaussianSource source(42, 0);
  const int n = 200000;
  double re = 0.0;
  double re2 = 0.0;
  double im2 = 0.0;
  double cross = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto z = source();
    re += z.real();
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
    cross += z.real() * z.imag();
  }
  CHECK(std::fabs(re / n) < 0.01);
  CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(im2 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::fabs(cross / n) < 0.01);
}

TEST_CASE("substreams are reproducible and distinct") {
  ComplexGaussianSource a(9, 1);
  ComplexGaussianSource b(9, 1);
  ComplexGaussianSource c(9, 2);
  const auto za = a.matrix(3, 4);
  CHECK(za == b.matrix(3, 4));
  CHECK(za != c.matrix(3, 4));
}

TEST_CASE("Wishart spectrum") {
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
  diag(0, 0) = 1.0;
  diag(1, 1) = std::complex<double>(0.0, 2.0);
  diag(2, 2) = 3.0;
  const WishartSpectrum s = wishart_spectrum(diag);
  CHECK(s.lambda_max == doctest::Approx(9.0));
  CHECK(s.diagonal_trace == doctest::Approx(14.0));
  CHECK(sle_statistic(diag) == doctest::Approx(3.0 * 9.0 / 14.0));

  ComplexGaussianSource source(5, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::MatrixXcd x = source.matrix(6, 9);
    const WishartSpectrum spectrum = wishart_spectrum(x);
    CHECK(spectrum.eigenvalues.minCoeff() >= -1e-12 * spectrum.diagonal_trace);
    CHECK(std::fabs(spectrum.eigen_trace - spectrum.diagonal_trace) <=
          1e-9 * spectrum.diagonal_trace);
  }
}

TEST_CASE("statistic is scale invariant") {
  ComplexGaussianSource source(77, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXcd x = source.matrix(4, 7);
    const double base = sle_statistic(x);
    for (const std::complex<double> scale : {std::complex<double>(3.5, -1.25),
                                             std::complex<double>(1e-3, 0.0),
                                             std::complex<double>(0.0, 250.0)}) {
      const Eigen::MatrixXcd scaled = x * scale;
      CHECK(std::fabs(sle_statistic(scaled) - base) < 1e-9);
    }
  }
}

TEST_CASE("samples lie in the support and are sorted") {
  SimulationConfig config{2, 2, 20000, 3, 4};
  const EmpiricalSample sample = sample_sle(config);
  CHECK(sample.values.size() == 20000);
  CHECK(std::is_sorted(sample.values.begin(), sample.values.end()));
  CHECK(sample.values.front() >= 1.0 - 1e-9);
  CHECK(sample.values.back() <= 2.0 + 1e-9);
}

TEST_CASE("sampling is deterministic for a fixed partition count") {
  SimulationConfig config{3, 5, 5000, 11, 4};
  const EmpiricalSample a = sample_sle(config);
  const EmpiricalSample b = sample_sle(config);
  CHECK(a.values == b.values);
  config.seed = 12;
  CHECK(sample_sle(config).values != a.values);
  config.seed = 11;
  config.partitions = 1;
  const EmpiricalSample serial = sample_sle(config);
  CHECK(serial.values.size() == a.values.size());
  CHECK(serial.values == sample_sle(config).values);
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(sample_sle({1, 3, 10, 0, 1}), DomainError);
  CHECK_THROWS_AS(sample_sle({3, 2, 10, 0, 1}), DomainError);
  CHECK_THROWS_AS(sample_sle({2, 3, 0, 0, 1}), DomainError);
  CHECK_THROWS_AS(sample_sle({2, 3, 10, 0, 0}), DomainError);
}

TEST_CASE("KS distance edge cases") {
  const SleDistribution d(closed_form_k2(2));
  EmpiricalSample constant;
  constant.config = {2, 2, 50, 0, 1};
  constant.values.assign(50, 1.0);
  CHECK(ks_distance(constant, d) == doctest::Approx(1.0));

  EmpiricalSample median;
  median.config = {2, 2, 1, 0, 1};
  median.values = {1.0 + std::cbrt(0.5)};
  CHECK(ks_distance(median, d) <= 0.5 + 1e-12);

  const std::vector<double> none;
  CHECK_THROWS_AS(ks_distance(none, [](double) { return 0.0; }), DomainError);
  const std::vector<double> uniform{0.25, 0.75};
  CHECK(ks_distance(uniform, [](double x) { return x; }) == doctest::Approx(0.25));
}

TEST_CASE("simulated K=2 N=10 matches the exact CDF") {
  const SleDistribution d(closed_form_k2(10));
  const EmpiricalSample sample = sample_sle({2, 10, 100000, 2024, 8});
  CHECK(ks_distance(sample, d) < 0.01);
  const SampleSummary summary = summarize(sample.values);
  CHECK(std::fabs(summary.mean - sle_moment(d, 1).to_double()) <= 3.0 * summary.standard_error);
}

TEST_CASE("sample export") {
  EmpiricalSample sample;
  sample.config = {2, 3, 2, 99, 2};
  sample.values = {1.25, 1.5};
  std::ostringstream os;
  write_sample_csv(os, sample);
  CHECK(os.str() == "x\n1.25\n1.5\n");
  const auto meta = sample_metadata(sample);
  CHECK(meta["K"] == 2);
  CHECK(meta["N"] == 3);
  CHECK(meta["seed"] == 99);
  CHECK(meta["generator"] == std::string(kGeneratorName));
  CHECK(meta["partitions"] == 2);
}
