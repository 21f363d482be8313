#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace petersburg::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 2,
    kDomainError = 3,
    kIoError = 4,
};

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace petersburg::cli
