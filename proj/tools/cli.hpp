#pragma once

// Command-line front end. run_cli is the whole program minus process setup, so
// the tests can drive it with string streams.

#include <iosfwd>

namespace itt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSolver = 3;

// Default OpenMP thread count; 0 or unset leaves the runtime default.
inline constexpr const char* kThreadsEnv = "ITT_NUM_THREADS";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace itt::cli
