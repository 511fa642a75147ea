#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sand::cli {

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kGuardExceeded = 3 };

// Runs one command line (args[0] is the program name). Report output goes to
// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sand::cli
