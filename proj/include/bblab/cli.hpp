#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bblab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitCapExceeded = 3;

/// Runs the command line `args` (without the program name). Data goes to
/// `out`; diagnostics, usage text and progress go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bblab
