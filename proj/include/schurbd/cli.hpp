#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace schurbd::cli {

/// Exit codes of the command line tool.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kNoSolution = 2,
    kVerifyFailed = 3,
};

/// Runs `schurbd <command> ...` with argv[0] included in args.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace schurbd::cli
