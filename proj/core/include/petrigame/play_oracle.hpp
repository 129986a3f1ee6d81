#pragma once

#include <vector>

#include "petrigame/game.hpp"
#include "petrigame/ltl/formula.hpp"
#include "petrigame/strategy.hpp"

namespace petrigame {

/// One maximal interleaving of a play, over markings of Sigma'.
struct PlayTrace {
  enum class Status {
    Deadlocked,  // nothing enabled
    Quiescent,   // no environment move and the strategy idles
    Truncated,   // bound reached with moves left
  };
  std::vector<Marking> markings;        // markings.size() == fired.size() + 1
  std::vector<TransitionId> fired;
  std::vector<char> controllable;       // per fired transition
  Status status = Status::Deadlocked;
};

const char* to_string(PlayTrace::Status status);

// Every interleaving of at most `bound` steps in which environment
// transitions fire freely and a controllable transition fires only when the
// strategy selects it at the current observation. Traces stop only when no
// such move is left, or at the bound. Throws InvalidArgument for bound 0.
std::vector<PlayTrace> fair_maximal_traces(const ExtendedNet& ext, const GameStructure& game,
                                           const Strategy& f, std::size_t bound);

enum class TraceVerdict { Sat, Viol, Unknown };
const char* to_string(TraceVerdict v);

// Terminated traces stutter on their final marking forever and are decided
// exactly; truncated ones get the sound three-valued prefix verdict. Goal
// atoms are places of the base net.
TraceVerdict verdict_on_trace(const ExtendedNet& ext, const PlayTrace& trace,
                              const ltl::Formula& goal);

}  // namespace petrigame
