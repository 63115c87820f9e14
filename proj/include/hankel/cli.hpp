#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hankel {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2, exit_numerical_error = 3 };

inline constexpr const char* kVersion = "1.0.0";

/// Entry point of the hankel_lab tool. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hankel
