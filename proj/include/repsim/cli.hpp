#pragma once

namespace repsim {

// Entry point behind main(): parses argv, dispatches the subcommand.
// Exit codes: 0 success, 1 runtime failure, 2 usage/config error.
int run_cli(int argc, const char* const* argv);

}  // namespace repsim
