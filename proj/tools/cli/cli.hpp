#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace schottky::cli {

enum ExitCode : int {
  kCertified = 0,
  kNotCertified = 1,
  kInputError = 2,
  kUnsupported = 3,
  kInconsistent = 4,
};

/// Runs one command. `args` excludes the program name. Human-readable output
/// goes to `out`, diagnostics to `err`; `--json PATH` also writes the report.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schottky::cli
