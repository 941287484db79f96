#pragma once

// The relsrs command line, callable in-process for tests.

#include <ostream>
#include <string>
#include <vector>

namespace relsrs {

  /// `args` excludes the program name.  Returns the process exit code.
  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace relsrs
