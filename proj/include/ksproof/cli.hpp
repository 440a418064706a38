#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ksproof::cli {

enum ExitCode : int {
    ok = 0,
    internal_error = 1,
    input_error = 2,
    negative_verdict = 3,
    verification_failure = 4,
    inconclusive = 5,
};

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace ksproof::cli
