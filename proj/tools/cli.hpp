#pragma once

#include <ostream>

namespace hippo::cli {

/// Exit codes.
enum Exit : int {
  ok = 0,
  checks_failed = 1,
  usage = 2,
  parse_error = 3,
  semantic_error = 4,
  numerical_error = 5,
};

/// Runs the `hippo` command line. Machine output goes to `out`, messages to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hippo::cli
