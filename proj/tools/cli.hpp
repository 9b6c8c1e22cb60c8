#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rellich::cli {

enum ExitCode : int { kSuccess = 0, kValidation = 2, kNumerical = 3 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rellich::cli
