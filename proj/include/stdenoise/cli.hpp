#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stdenoise {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitParameter = 3,
};

/// Entry point of the `stdenoise` tool; `args` excludes the program name.
/// Results go to `out`, diagnostics to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, const char* const* argv);

}  // namespace stdenoise
