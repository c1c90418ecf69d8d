#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcdlab::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs one command. args excludes the program name. Reports go to out (or
/// --out), diagnostics and JSON error objects to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcdlab::cli
