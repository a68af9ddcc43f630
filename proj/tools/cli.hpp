#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrx::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,         // unreadable or malformed input
  kPremise = 3,       // reconciliation premises do not hold
  kTimeout = 4,
  kVerification = 5,  // an explanation failed its checks
  kPlanning = 6,      // unreachable goal, state or grounding cap
  kInternal = 7,
};

/// Runs the mrx command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrx::cli
