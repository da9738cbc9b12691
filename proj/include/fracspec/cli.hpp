#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracspec {

/// Exit codes: 0 success, 1 verification or solve failure, 2 usage error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Runs `fracspec <subcommand> ...` with args excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace fracspec
