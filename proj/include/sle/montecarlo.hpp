#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sle/distribution.hpp"

namespace sle {

/// Name of the sampling algorithm, recorded in metadata.
inline constexpr std::string_view kGeneratorName =
    "mt19937_64/splitmix64-substreams/box-muller";

struct SimulationConfig {
  int K = 2;
  int N = 2;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  /// Independent substreams; results depend on this count, not on threads.
  unsigned partitions = 8;

  /// DomainError unless 2 <= K <= N, samples >= 1, partitions >= 1.
  void validate() const;
};

/// Sorted draws of the statistic.
struct EmpiricalSample {
  std::vector<double> values;
  SimulationConfig config;
};

/// Unit-variance circular complex Gaussian source: real and imaginary parts
/// are independent N(0, 1/2).
class ComplexGaussianSource {
 public:
  ComplexGaussianSource(std::uint64_t seed, std::uint64_t stream);
  std::complex<double> operator()();
  /// K x N matrix of independent draws, column-major fill order.
  Eigen::MatrixXcd matrix(int rows, int cols);

 private:
  double uniform_open();

  std::mt19937_64 engine_;
};

struct WishartSpectrum {
  double lambda_max;
  double eigen_trace;     // sum of eigenvalues
  double diagonal_trace;  // sum of diag(R)
  Eigen::VectorXd eigenvalues;
};

/// Eigen-decomposes R = X X^H. NumericalError if the solver fails.
WishartSpectrum wishart_spectrum(const Eigen::MatrixXcd& data);

/// K lambda_max / tr(R) for R = X X^H.
double sle_statistic(const Eigen::MatrixXcd& data);

EmpiricalSample sample_sle(const SimulationConfig& config);

/// sup |F_n - F| over the sorted sample, checking both one-sided gaps.
double ks_distance(std::span<const double> sorted_values,
                   const std::function<double(double)>& cdf);
double ks_distance(const EmpiricalSample& sample, const SleDistribution& d);

struct SampleSummary {
  double mean;
  double standard_error;
};
SampleSummary summarize(std::span<const double> values);

/// CSV with header `x`, one value per row.
void write_sample_csv(std::ostream& os, const EmpiricalSample& sample);
nlohmann::ordered_json sample_metadata(const EmpiricalSample& sample);

}  // namespace sle
