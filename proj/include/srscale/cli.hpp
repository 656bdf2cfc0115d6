#pragma once

#include <ostream>

namespace srscale {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;      // parse or structure error
inline constexpr int kExitBreakdown = 3;  // factorization breakdown
inline constexpr int kExitArgument = 4;   // invalid argument or infeasible target
inline constexpr int kExitOther = 1;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srscale
