#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bangnce {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,       // semantic failure: invalid input, inequivalent languages, unknown box
  kExitParse = 2,         // malformed input, unreadable or unwritable file, bad flags
  kExitOutOfFragment = 3  // non-trivial overlap
};

/// Entry point of the `bangnce` tool. `args` excludes the program name.
/// Results go to `out`, diagnostics and the run manifest (unless
/// --manifest names a file) to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bangnce
