#pragma once

#include <iosfwd>

namespace treeharm {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitIo = 2,
  kExitScope = 3,
  kExitViolation = 4,
};

/// Entry point of the `treeharm` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace treeharm
