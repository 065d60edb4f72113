#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace htaac::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

/// Runs one CLI invocation. Output that is not written to a file goes to `out`.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace htaac::cli
