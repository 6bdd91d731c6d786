#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scigraph {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kQueryError = 2,
  kInputError = 3,
  kNotFound = 4,
  kChartError = 5,
};

/// Runs the command line given argv[1..]; data goes to `out`, warnings and
/// diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scigraph
