#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symfix {

// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitBudget = 3,
    kExitMismatch = 4,
};

// Runs one command line (without the program name). Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symfix
