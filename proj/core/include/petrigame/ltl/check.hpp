#pragma once

#include <optional>
#include <span>
#include <vector>

#include "petrigame/ltl/buchi.hpp"
#include "petrigame/ltl/kripke_model.hpp"

namespace petrigame::ltl {

/// Ultimately periodic path: stem, then cycle repeated forever. The cycle is
/// non-empty and its last state has an edge back to its first.
struct Lasso {
  std::vector<KState> stem;
  std::vector<KState> cycle;
};

struct Verdict {
  enum class Kind { Holds, Fails, Vacuous };
  Kind kind = Kind::Holds;
  std::optional<Lasso> counterexample;  // set for Fails

  bool holds() const { return kind == Kind::Holds; }
};

const char* to_string(Verdict::Kind kind);

// A lasso from the initial state whose cycle meets every fairness atom.
std::optional<Lasso> find_fair_lasso(const KripkeModel& model, std::span<const PropId> fairness);
bool exists_fair_path(const KripkeModel& model, std::span<const PropId> fairness);

// Holds iff every path from the initial state on which each fairness atom is
// true infinitely often satisfies the goal. Vacuous when no such path exists.
// Throws UnknownAtom for goal atoms outside the model.
Verdict check_fair(const KripkeModel& model, const Formula& goal,
                   std::span<const PropId> fairness);

// Word of propositions along a lasso.
std::vector<Valuation> word_of(const KripkeModel& model, const std::vector<KState>& states);

}  // namespace petrigame::ltl
