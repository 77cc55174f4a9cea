#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  /// Unresolved findings under --strict.
  kStrictFailure = 2,
  /// An internal cross-check failed; a bug, not bad input.
  kInternalError = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toric::cli
