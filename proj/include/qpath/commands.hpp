// commands.hpp
// The qpath command line: decompose, verify, feasible, ham, oracle.
//
// Exit codes: 0 success, 1 internal error, 2 infeasible input or failed
// precondition (including bad flags), 3 unparsable input file, 4 certificate
// rejected by the checker.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpath::cli {

enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kInfeasible = 2,
    kParseError = 3,
    kRejected = 4,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpath::cli
