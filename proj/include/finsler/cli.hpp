#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace finsler {

/// Exit codes: 0 success, 1 input or domain error, 2 the metric or profile is
/// outside the requested curvature case (or misses a reference result).
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitCase = 2 };

/// Runs `finsler2d` with `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finsler
