#pragma once

#include <iosfwd>

namespace biped::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputError = 2,
  kStepInfeasible = 3,
  kCheckFailed = 4,  // check found unstable records
};

/// Entry point of the `bipedgait` tool: generate | check | plot | compare | ik.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace biped::cli
