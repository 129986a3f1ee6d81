#pragma once

#include <ostream>

namespace petrigame::cli {

// Exit codes.
inline constexpr int kSuccess = 0;   // Realizable, Holds, oracle agrees
inline constexpr int kNegative = 1;  // Unrealizable, Fails / Vacuous, oracle disagrees
inline constexpr int kError = 2;     // bad input, I/O, caps

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace petrigame::cli
