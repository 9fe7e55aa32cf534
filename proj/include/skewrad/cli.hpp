#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace skewrad {

/// Exit statuses of the command line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,   // a check or certificate did not pass
  kExitInput = 2,  // bad input, violated precondition or exceeded cap
};

/// Runs the tool on args (without the program name), writing the report to
/// out and diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewrad
