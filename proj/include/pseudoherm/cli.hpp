#pragma once

#include <iosfwd>

#include "pseudoherm/error.hpp"

namespace pseudoherm::cli {

/// 0 success, 1 usage or parse error, 2 numerical ambiguity, 3 refusal.
enum ExitCode : int { kOk = 0, kUsage = 1, kAmbiguous = 2, kRefused = 3 };

int exit_code_for(ErrorCode code);

/// Runs one command line (argv[0] is the program name). Reports and CSV go
/// to `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pseudoherm::cli
