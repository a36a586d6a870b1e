#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace hyperpascal::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,      // success, Pass, Converged
  kNumericFail = 1,  // Fail, Inconclusive, NotConverging
  kUsageError = 2,   // malformed input or resource cap breached
};

/// Parses "a+bi", "a-bi", "bi", "i", "-i" and plain reals.
/// Throws std::invalid_argument on malformed text.
std::complex<double> parse_complex(const std::string& text);

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperpascal::cli
