#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reglab::cli {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2 };

/// Runs one command line (without the program name). Reports go to the
/// directory given by --out; a one-line summary goes to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reglab::cli
