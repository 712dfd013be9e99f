#pragma once

#include <iosfwd>

namespace floorsum::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kDomainError = 3,
  kBudgetExceeded = 4,
};

// Entry point of the floorsum tool; output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace floorsum::cli
