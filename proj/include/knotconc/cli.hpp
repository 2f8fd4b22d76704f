#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace knotconc::cli {

// Exit statuses of run().
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParseError = 2,
  kValidationError = 3,
  kHypothesisFailed = 4,
  kInternalError = 5,
  kUnsupported = 6,
  kReplayMismatch = 7,
};

// Default ρ₀ tolerance override.
inline constexpr const char* kTolEnv = "KNOTCONC_TOL";

// args excludes the program name.  The report goes to `out`, diagnostics
// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace knotconc::cli
