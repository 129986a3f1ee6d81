#pragma once

#include <vector>

#include "petrigame/ltl/formula.hpp"

namespace petrigame::ltl {

/// State-labelled generalized Buchi automaton. A run q0 q1 ... reads the word
/// w0 w1 ... when every wi satisfies the literals of qi; it accepts when it
/// visits each acceptance set infinitely often.
struct GeneralizedBuchi {
  struct State {
    std::vector<PropId> positive;
    std::vector<PropId> negative;
    std::vector<std::uint32_t> successors;
  };
  std::vector<State> states;
  std::vector<std::uint32_t> initial;
  std::vector<std::vector<std::uint32_t>> acceptance;  // one set per U / F subformula

  bool admits(std::uint32_t q, const Valuation& v) const;
};

// Tableau construction. The input must be in negation normal form; the
// automaton accepts exactly the models of the formula.
GeneralizedBuchi to_buchi(const FlatFormula& f);

}  // namespace petrigame::ltl
