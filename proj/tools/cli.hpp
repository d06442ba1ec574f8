#ifndef OSCX_CLI_HPP_
#define OSCX_CLI_HPP_

#include <ostream>

namespace oscx {

enum ExitCode : int { kOk = 0, kFailure = 1, kInvalidInput = 2 };

/// Runs the command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oscx

#endif  // OSCX_CLI_HPP_
