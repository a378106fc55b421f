#pragma once

namespace coophunt {

inline constexpr const char* kToolName = "coophunt";
inline constexpr const char* kToolVersion = "1.0.0";

// Parses argv and runs one subcommand.  Exit codes: 0 success, 2 usage or
// invalid parameters, 3 numeric failure, 4 regime precondition unmet.
int run_cli(int argc, const char* const* argv);

}  // namespace coophunt
