#pragma once

#include <optional>
#include <vector>

#include "petrigame/game.hpp"
#include "petrigame/ltl/kripke_model.hpp"
#include "petrigame/strategy.hpp"

namespace petrigame {

struct KripkeOrigin {
  enum class Kind { GameState, Intermediate, DeadlockPartner };
  Kind kind = Kind::GameState;
  StateId state = 0;  // the game state, or the source of the split edge
  std::optional<TransitionId> transition;  // Intermediate only
  StateId target = 0;                      // Intermediate only
};

/// K(G, f). Propositions are the places of Sigma', then one atom per
/// environment transition, then "u" and "env". Only the part reachable from
/// the initial state under f is materialized.
struct EncodedModel {
  ltl::KripkeModel model;
  std::vector<KripkeOrigin> origin;  // per Kripke state
  std::vector<ltl::PropId> fairness;  // environment transition atoms, u, env
  std::size_t place_props = 0;

  ltl::PropId transition_prop(std::size_t env_index) const {
    return static_cast<ltl::PropId>(place_props + env_index);
  }
  ltl::PropId user_prop() const { return fairness[fairness.size() - 2]; }
  ltl::PropId env_prop() const { return fairness.back(); }
};

// Throws StrategySelectsDisabled when f picks a transition that some reached
// state of its class cannot fire.
EncodedModel encode(const GameStructure& game, const Strategy& f);

}  // namespace petrigame
