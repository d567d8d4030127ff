#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypertrop::cli {

enum ExitCode { kOk = 0, kUsage = 1, kDomain = 2, kNotCertified = 3 };

// Runs the command line (without the program name), writing the JSON
// report to `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypertrop::cli
