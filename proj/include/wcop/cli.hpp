#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wcop {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitUsage = 2, kExitInconsistent = 3 };

/// Runs `wcop <args...>` (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcop
