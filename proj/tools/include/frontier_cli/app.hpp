#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frontier::cli {

enum ExitCode : int {
  kOk = 0,
  kFinding = 1,      // violations, jump candidates, counterexample or disagreement
  kInputError = 2,   // unreadable or invalid input, refused lattice
  kInternalError = 3,
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frontier::cli
