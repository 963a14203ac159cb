#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bmin {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitRuntime = 3 };

/// Runs `bmin <subcommand> [flags]`; `args` excludes the program name.
/// CSV goes to --out when given, otherwise to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bmin
