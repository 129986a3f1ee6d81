#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "petrigame/marking_graph.hpp"
#include "petrigame/regions.hpp"
#include "petrigame/stability.hpp"

namespace petrigame {

struct GameMove {
  TransitionId transition;
  StateId target;
};

struct PrunedEdge {
  Marking source;
  TransitionId transition;
  Marking target;
};

// Weak-fairness constraints: one <env, #t> per environment transition plus the
// two scheduler constraints, which surface as the u/env atoms of the Kripke
// encoding.
struct FairnessSpec {
  std::vector<TransitionId> environment;
  bool scheduler_user = true;
  bool scheduler_env = true;
};

/// Turn-based asynchronous game derived from MG(Sigma'): controllable edges
/// whose pre-set is not inside the observed stable part are removed and only
/// states still reachable are kept (re-indexed in BFS order, initial first).
struct GameStructure {
  explicit GameStructure(ExtendedNet ext) : net(std::move(ext)) {}

  ExtendedNet net;
  std::vector<Marking> states;
  std::vector<std::vector<GameMove>> moves;  // per state, ordered by transition id
  std::vector<Marking> stable;
  std::vector<Observation> observation;
  std::vector<ClassId> class_of;
  std::vector<Observation> class_observation;  // classes numbered by first reach
  std::vector<PrunedEdge> pruned;
  FairnessSpec fairness;

  std::size_t state_count() const { return states.size(); }
  std::size_t class_count() const { return class_observation.size(); }
  StateId initial() const { return 0; }

  // Controllable moves of d_u(m); the idle move is implicit.
  std::vector<TransitionId> user_moves(StateId s) const;
  // Environment moves of d_env(m); empty stands for {eps}.
  std::vector<TransitionId> env_moves(StateId s) const;
  bool env_enabled(StateId s) const;
  std::optional<StateId> tau(StateId s, TransitionId t) const;
  std::optional<StateId> find(const Marking& m) const;

  // Controllable transitions whose pre-set lies in the class observation, in
  // declaration order.
  std::vector<TransitionId> class_options(ClassId c) const;

 private:
  friend GameStructure derive_game(const ExtendedNet&, const MarkingGraph&,
                                   const ObservationPartition&);
  std::unordered_map<Marking, StateId> index_;
};

GameStructure derive_game(const ExtendedNet& ext, const MarkingGraph& mg,
                          const ObservationPartition& partition);
GameStructure derive_game(const ExtendedNet& ext, const ExploreOptions& options = {});

// #t(m): empty when t is not enabled at m, otherwise t together with every
// enabled environment transition sharing a pre-place with it. Throws
// NotEnvironment for controllable t.
std::vector<TransitionId> sharp(const GameStructure& game, TransitionId t, StateId m);

}  // namespace petrigame
