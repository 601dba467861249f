#include "sle/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "sle/errors.hpp"

namespace sle {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t base = splitmix64(state);
  state = base ^ (stream * 0xD1B54A32D192ED03ULL);
  return splitmix64(state);
}

}  // namespace

void SimulationConfig::validate() const {
  if (K < 2 || N < K) {
    throw DomainError("simulation requires 2 <= K <= N");
  }
  if (samples < 1) {
    throw DomainError("simulation requires at least one sample");
  }
  if (partitions < 1) {
    throw DomainError("simulation requires at least one partition");
  }
}

ComplexGaussianSource::ComplexGaussianSource(std::uint64_t seed, std::uint64_t stream)
    : engine_(substream_seed(seed, stream)) {}

double ComplexGaussianSource::uniform_open() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::complex<double> ComplexGaussianSource::operator()() {
  // Box-Muller pair with per-component variance 1/2: radius sqrt(-log u).
  const double radius = std::sqrt(-std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform_open();
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

Eigen::MatrixXcd ComplexGaussianSource::matrix(int rows, int cols) {
  Eigen::MatrixXcd out(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) out(r, c) = (*this)();
  }
  return out;
}

WishartSpectrum wishart_spectrum(const Eigen::MatrixXcd& data) {
  const Eigen::MatrixXcd gram = data * data.adjoint();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Hermitian eigensolver failed to converge for a " << gram.rows() << "x"
        << gram.cols() << " Wishart matrix (trace " << gram.trace().real() << ")";
    throw NumericalError(msg.str());
  }
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.maxCoeff(), values.sum(), gram.trace().real(), values};
}

double sle_statistic(const Eigen::MatrixXcd& data) {
  const WishartSpectrum spectrum = wishart_spectrum(data);
  return static_cast<double>(data.rows()) * spectrum.lambda_max / spectrum.diagonal_trace;
}

EmpiricalSample sample_sle(const SimulationConfig& config) {
  config.validate();
  const std::size_t parts = config.partitions;
  std::vector<std::vector<double>> chunks(parts);
  std::vector<std::exception_ptr> failures(parts);

  auto work = [&](std::size_t p) {
    try {
      const std::size_t count =
          config.samples / parts + (p < config.samples % parts ? 1 : 0);
      ComplexGaussianSource source(config.seed, p);
      auto& out = chunks[p];
      out.reserve(count);
      for (std::size_t s = 0; s < count; ++s) {
        out.push_back(sle_statistic(source.matrix(config.K, config.N)));
      }
    } catch (...) {
      failures[p] = std::current_exception();
    }
  };

  std::vector<std::jthread> workers;
  workers.reserve(parts);
  for (std::size_t p = 0; p < parts; ++p) workers.emplace_back(work, p);
  workers.clear();

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  EmpiricalSample sample;
  sample.config = config;
  sample.values.reserve(config.samples);
  for (auto& chunk : chunks) {
    sample.values.insert(sample.values.end(), chunk.begin(), chunk.end());
  }
  std::sort(sample.values.begin(), sample.values.end());
  return sample;
}

double ks_distance(std::span<const double> sorted_values,
                   const std::function<double(double)>& cdf) {
  if (sorted_values.empty()) {
    throw DomainError("ks_distance: empty sample");
  }
  const double n = static_cast<double>(sorted_values.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted_values.size(); ++i) {
    const double f = cdf(sorted_values[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    worst = std::max({worst, above, below});
  }
  return worst;
}

double ks_distance(const EmpiricalSample& sample, const SleDistribution& d) {
  return ks_distance(sample.values, [&d](double x) { return d.probability_below(x); });
}

SampleSummary summarize(std::span<const double> values) {
  if (values.empty()) {
    throw DomainError("summarize: empty sample");
  }
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double variance = values.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(variance / n)};
}

void write_sample_csv(std::ostream& os, const EmpiricalSample& sample) {
  os << "x\n";
  for (const double v : sample.values) os << format_shortest(v) << '\n';
}

nlohmann::ordered_json sample_metadata(const EmpiricalSample& sample) {
  const auto& c = sample.config;
  return {{"K", c.K},
          {"N", c.N},
          {"samples", c.samples},
          {"seed", c.seed},
          {"generator", std::string(kGeneratorName)},
          {"partitions", c.partitions}};
}

}  // namespace sle
