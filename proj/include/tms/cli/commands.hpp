#pragma once

#include <iosfwd>

namespace tms::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitObstruction = 4;

// Entry point of the tms tool. Results go to `out` as one JSON document,
// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tms::cli
