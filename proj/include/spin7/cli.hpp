#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spin7::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kRuntimeError = 2 };

/// Runs one command. args excludes the program name. Primary data (CSV, or
/// JSON for check-holonomy/verify) goes to --output when given, else to out;
/// the accompanying JSON report goes to out when --output names a file and
/// to err otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spin7::cli
