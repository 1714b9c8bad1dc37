#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kgsec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitError = 2;

/// Runs the command line `args` (without the program name). Machine output
/// goes to `out`, diagnostics to `err`. Returns 0 on success or a compliant
/// manifest, 1 when findings are present, 2 on any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kgsec::cli
