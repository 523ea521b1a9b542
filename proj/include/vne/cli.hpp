#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vne::cli {

enum ExitCode : int { kOk = 0, kComputationError = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name). Structured JSON
/// goes to `out`, human-readable progress and summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vne::cli
