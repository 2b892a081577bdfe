#pragma once
// Command-line front end. Exit codes: 0 success, 1 verification or
// convergence failure, 2 usage or input error.

#include <iosfwd>

namespace landflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace landflow::cli
