#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdecay {

/// Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs `qdecay <args...>` (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace qdecay
