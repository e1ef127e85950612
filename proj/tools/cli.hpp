#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rankstat::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
};

// Runs the rankstat command line. `args` excludes the program name. Input named
// "-" is read from `in`; reports go to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace rankstat::cli
