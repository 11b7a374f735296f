#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace tailbounds::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kValidation = 3,
    kInfeasible = 4,
    kSoundness = 5,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Maps a library exception to its exit code and prints a one-line message.
/// Exceptions outside the library's hierarchy are rethrown.
int report_error(std::exception_ptr error, std::ostream& err);

} // namespace tailbounds::cli
