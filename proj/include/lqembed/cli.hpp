#pragma once

#include <ostream>

namespace lqembed::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kDegenerateWindow = 3,
  kConsistencyFailure = 4,
};

/// Runs the command line tool; output goes to `out` unless --out is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lqembed::cli
