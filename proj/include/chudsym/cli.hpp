#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chudsym::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kInfeasible = 2,
    kVerification = 3,
};

constexpr unsigned long long kDefaultSeed = 20240917ULL;

// Runs one command line (args exclude the program name) and writes the
// result to `out`. Errors are reported on `out` as {"error": {...}}.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace chudsym::cli
