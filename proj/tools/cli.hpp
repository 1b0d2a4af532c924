#ifndef THETALAB_TOOLS_CLI_HPP
#define THETALAB_TOOLS_CLI_HPP

#include <iosfwd>

namespace thetalab::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

/// Runs one command line. Reports and error objects go to `out`.
int run(int argc, const char* const* argv, std::ostream& out);

}  // namespace thetalab::cli

#endif
