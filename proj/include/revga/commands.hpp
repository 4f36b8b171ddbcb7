#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace revga {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitSizeCap = 2,
  kExitMismatch = 3,
};

/// Entry point of the `revga` tool. `args` excludes the program name.
///
/// Subcommands: distance, sort, experiment, oracle-check.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revga
