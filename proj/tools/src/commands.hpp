#pragma once

#include <string>
#include <vector>

namespace ufofdm::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,      ///< bad flags, parameters or configuration
  kExitSolver = 3,     ///< design LP infeasible or not solved
  kExitNumerical = 4,  ///< factorization, spectral null, experiment or replay mismatch
};

/// Parses and runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace ufofdm::cli
