#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace molent::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitOther = 1,
    kExitUsage = 2,
    kExitIntegration = 3,
    kExitIo = 4,
};

/// Full command line without the program name. Regular output goes to `out`,
/// diagnostics and the one-line error record to `err`:
///   error code=<n> kind=<usage|integration|io|other> [t_reached=<s>] message="<text>"
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace molent::cli
