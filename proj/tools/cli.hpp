#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skewsds::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCertificationFailure = 1,
  kExitUsage = 2,
  kExitInfeasible = 3,
  kExitBudget = 4,
};

// Runs the command line. Reports go to `out`, diagnostics to `err`.
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewsds::cli
