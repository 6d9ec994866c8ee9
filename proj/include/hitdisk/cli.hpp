#pragma once

#include <iosfwd>

namespace hitdisk::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kDomain = 3 };

/// Entry point of the `hitdisk` tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hitdisk::cli
