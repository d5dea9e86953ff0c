#ifndef EVIDFUSE_CLI_HPP
#define EVIDFUSE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace evidfuse::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kTotalConflict = 2,
  kNumericalError = 3,
  kDocumentedDiscrepancy = 4,
};

/// Entry point behind the `evidfuse` binary. `args` excludes the program
/// name. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evidfuse::cli

#endif  // EVIDFUSE_CLI_HPP
