#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smq {

/// Exit codes of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_usage = 2 };

/// Runs one subcommand. `args` excludes the program name. Identical arguments give
/// byte-identical output.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smq
