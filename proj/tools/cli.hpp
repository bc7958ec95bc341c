#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace svccomp::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInvalidRegistry = 1,
  kBadArguments = 2,
  kNotFound = 3,
};

/// Runs one command line (args excludes the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace svccomp::cli
