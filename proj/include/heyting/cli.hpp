#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heyting::cli {

/// Exit codes: 0 success / no violation, 2 violation found, 1 input error.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kViolated = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heyting::cli
