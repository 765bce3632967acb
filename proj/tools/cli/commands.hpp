#pragma once

#include <ostream>

namespace catenoid::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDomain = 3,
  kTolerance = 4,
};

/// Entry point of the `catenoid` tool with its streams injected. Output
/// goes to `out` unless --out names a file.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace catenoid::cli
