#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pspankit::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_input = 2,
  exit_not_spanning = 10,
  exit_budget = 11,
  exit_bound_unavailable = 12,
  exit_asymmetric = 13,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pspankit::cli
