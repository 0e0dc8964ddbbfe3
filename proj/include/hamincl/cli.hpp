#pragma once

#include "hamincl/config.hpp"

#include <iosfwd>
#include <string>

namespace hamincl::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,    ///< a certificate failed or the run did not verify
  kInputError = 2,  ///< malformed config or files
  kInfeasible = 3,  ///< period at or above the admissible threshold
};

int cmd_certify(const RunConfig& cfg, std::ostream& log);
int cmd_calibrate(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const std::string& trajectory_path, const RunConfig& cfg, std::ostream& log);
int cmd_bench(const RunConfig& cfg, std::ostream& log, int repeats = 5);

/// Full command line front end.  Precedence: built-in defaults, then the
/// config file, then command-line flags.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace hamincl::cli
