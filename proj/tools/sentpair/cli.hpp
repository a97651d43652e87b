#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sentpair::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kInputError = 3,
  kConfigError = 4,
  kOutputError = 5,
};

// Entry point behind the sentpair binary. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace sentpair::cli
