#include "sle/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sle/coefficients.hpp"
#include "sle/distribution.hpp"
#include "sle/errors.hpp"
#include "sle/montecarlo.hpp"

namespace sle {

namespace {

struct Options {
  int K = 0;
  int N = 0;
  std::string engine = "auto";
  std::string out_path;
  int grid = 512;
  double p = 0.5;
  double alpha = 0.01;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned partitions = 8;
  int max_moment = 6;
};

// Writes to --out when given, else to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw DomainError("cannot open output file '" + path + "'");
      }
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

SleDistribution make_distribution(const Options& o) {
  return SleDistribution(compute_coefficients(o.K, o.N, parse_engine(o.engine)));
}

int run_coeffs(const Options& o, std::ostream& out) {
  const CoefficientTable table = compute_coefficients(o.K, o.N, parse_engine(o.engine));
  Sink sink(o.out_path, out);
  sink.stream() << to_json(table).dump(2) << '\n';
  return kExitOk;
}

int run_curve(const Options& o, std::ostream& out) {
  const SleDistribution d = make_distribution(o);
  const std::vector<double> grid = default_grid(o.K, o.grid);
  Sink sink(o.out_path, out);
  write_distribution_csv(sink.stream(), d, grid);
  return kExitOk;
}

int run_quantile(const Options& o, std::ostream& out) {
  if (!(o.p >= 0.0 && o.p <= 1.0)) {
    throw DomainError("--p must lie in [0, 1]");
  }
  const SleDistribution d = make_distribution(o);
  Sink sink(o.out_path, out);
  sink.stream() << format_shortest(quantile(d, o.p)) << '\n';
  return kExitOk;
}

int run_threshold(const Options& o, std::ostream& out) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) {
    throw DomainError("--alpha must lie in (0, 1)");
  }
  const SleDistribution d = make_distribution(o);
  Sink sink(o.out_path, out);
  sink.stream() << format_shortest(threshold_for_false_alarm(d, o.alpha)) << '\n';
  return kExitOk;
}

int run_moments(const Options& o, std::ostream& out) {
  if (o.max_moment < 0) {
    throw DomainError("--max-moment must be nonnegative");
  }
  const SleDistribution d = make_distribution(o);
  Sink sink(o.out_path, out);
  auto& os = sink.stream();
  bool all_hold = true;
  for (int m = 0; m <= o.max_moment; ++m) {
    const Rational moment = sle_moment(d, m);
    os << "E[X^" << m << "] = " << moment << " ~ " << format_shortest(moment.to_double())
       << '\n';
  }
  for (int z = 1; z <= o.max_moment + 1; ++z) {
    const Rational lhs = lambda1_moment(d.table(), z);
    const Rational rhs = sle_moment(d, z - 1) * trace_moment(o.K, o.N, z);
    const bool holds = lhs == rhs;
    all_hold = all_hold && holds;
    os << "mellin z=" << z << ": E[lambda1^" << z - 1 << "] = E[X^" << z - 1 << "] E[T^"
       << z - 1 << "] " << (holds ? "holds" : "FAILS") << '\n';
  }
  return all_hold ? kExitOk : kExitValidationFailed;
}

int run_validate(const Options& o, std::ostream& out) {
  const SleDistribution d = make_distribution(o);
  SimulationConfig config;
  config.K = o.K;
  config.N = o.N;
  config.samples = o.samples;
  config.seed = o.seed;
  config.partitions = o.partitions;
  const EmpiricalSample sample = sample_sle(config);

  if (!o.out_path.empty()) {
    Sink sink(o.out_path, out);
    write_sample_csv(sink.stream(), sample);
    Sink meta(o.out_path + ".meta.json", out);
    meta.stream() << sample_metadata(sample).dump(2) << '\n';
  }

  const double ks = ks_distance(sample, d);
  const SampleSummary summary = summarize(sample.values);
  const double exact_mean = sle_moment(d, 1).to_double();
  const double deviation = std::fabs(summary.mean - exact_mean) / summary.standard_error;
  const bool ks_ok = ks < kKsLimit;
  const bool mean_ok = deviation <= kMeanStandardErrors;

  out << "K=" << o.K << " N=" << o.N << " samples=" << o.samples << " seed=" << o.seed
      << " partitions=" << o.partitions << " generator=" << kGeneratorName << '\n';
  out << "ks_distance=" << format_shortest(ks) << " limit=" << format_shortest(kKsLimit)
      << (ks_ok ? " PASS" : " FAIL") << '\n';
  out << "mean_exact=" << format_shortest(exact_mean)
      << " mean_empirical=" << format_shortest(summary.mean)
      << " standard_error=" << format_shortest(summary.standard_error)
      << " deviation_se=" << format_shortest(deviation) << (mean_ok ? " PASS" : " FAIL")
      << '\n';
  out << "result=" << (ks_ok && mean_ok ? "PASS" : "FAIL") << '\n';
  return ks_ok && mean_ok ? kExitOk : kExitValidationFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact distribution of the scaled largest eigenvalue of complex Wishart matrices",
               "sle"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--K", o.K, "Matrix rows (K >= 2)")->required();
    cmd->add_option("--N", o.N, "Degrees of freedom (N >= K)")->required();
    cmd->add_option("--engine", o.engine, "Coefficient engine")
        ->check(CLI::IsMember({"auto", "closed-form", "hankel"}));
    cmd->add_option("--out", o.out_path, "Output path (default stdout)");
  };

  auto* coeffs = app.add_subcommand("coeffs", "Coefficient table as JSON");
  add_common(coeffs);
  auto* pdf = app.add_subcommand("pdf", "Tabulate x,pdf,cdf as CSV");
  auto* cdf = app.add_subcommand("cdf", "Tabulate x,pdf,cdf as CSV");
  for (auto* cmd : {pdf, cdf}) {
    add_common(cmd);
    cmd->add_option("--grid", o.grid, "Uniform grid points on [1, K]")
        ->check(CLI::Range(2, 10000000));
  }
  auto* quant = app.add_subcommand("quantile", "Inverse CDF at probability p");
  add_common(quant);
  quant->add_option("--p", o.p, "Probability in [0, 1]")->required();
  auto* thresh = app.add_subcommand("threshold", "Detection threshold for false-alarm alpha");
  add_common(thresh);
  thresh->add_option("--alpha", o.alpha, "False-alarm probability in (0, 1)")->required();
  auto* validate = app.add_subcommand("validate", "Monte Carlo check against the exact CDF");
  add_common(validate);
  validate->add_option("--samples", o.samples, "Number of draws")->check(CLI::PositiveNumber);
  validate->add_option("--seed", o.seed, "RNG seed");
  validate->add_option("--partitions", o.partitions, "RNG substreams / worker threads")
      ->check(CLI::Range(1u, 1024u));
  auto* moments = app.add_subcommand("moments", "Exact moments and Mellin identity checks");
  add_common(moments);
  moments->add_option("--max-moment", o.max_moment, "Highest moment order")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*coeffs) return run_coeffs(o, out);
    if (*pdf || *cdf) return run_curve(o, out);
    if (*quant) return run_quantile(o, out);
    if (*thresh) return run_threshold(o, out);
    if (*validate) return run_validate(o, out);
    if (*moments) return run_moments(o, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace sle
