#pragma once

#include <iosfwd>

namespace xicor {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitDomainError = 1,
    kExitUsage = 2,
    /// Returned by `test --exit-on-reject` when the null is rejected.
    kExitRejected = 3,
};

/// Entry point of the `xicor` tool; all output goes to the given streams.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace xicor
