#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lqnet::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kNumerical = 3, kSimulation = 4 };

// Runs the command line `args` (without the program name). CSV goes to `out` when
// no --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lqnet::cli
