#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bh {

/// Exit statuses of the bhsets tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_invalid = 2,
  exit_verification = 3,
};

/// Runs the command line tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bh
