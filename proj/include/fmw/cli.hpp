#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmw {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitNumerical = 2 };

/// Runs the command line `args` (args[0] is the program name). `in` feeds
/// subcommands reading an FCM from "-".
int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace fmw
