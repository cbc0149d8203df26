#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hdosc {

/// Exit codes: 0 success, 2 argument error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs the command line `args` (without the program name). Records go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdosc
