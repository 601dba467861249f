#pragma once

#include <iosfwd>

namespace sle {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitUsage = 2,
  kExitResource = 3,
  kExitInternal = 4,
};

/// Monte Carlo acceptance limits used by `validate`.
inline constexpr double kKsLimit = 0.01;
inline constexpr double kMeanStandardErrors = 3.0;

/// Entry point of the `sle` tool: `sle <command> --K k --N n [options]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sle
