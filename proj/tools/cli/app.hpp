#pragma once

#include <ostream>
#include <span>
#include <string>

namespace moikit::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kPrecondition = 2,
  kParseError = 3,
};

/// Runs one command line (without the program name). The report goes to
/// --out, or to `out` when no path is given; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace moikit::cli
