#include "petrigame/game.hpp"

#include <deque>

#include "petrigame/error.hpp"

namespace petrigame {

std::vector<TransitionId> GameStructure::user_moves(StateId s) const {
  std::vector<TransitionId> out;
  for (const GameMove& mv : moves.at(s)) {
    if (net.net.controllable(mv.transition)) out.push_back(mv.transition);
  }
  return out;
}

std::vector<TransitionId> GameStructure::env_moves(StateId s) const {
  std::vector<TransitionId> out;
  for (const GameMove& mv : moves.at(s)) {
    if (!net.net.controllable(mv.transition)) out.push_back(mv.transition);
  }
  return out;
}

bool GameStructure::env_enabled(StateId s) const {
  for (const GameMove& mv : moves.at(s)) {
    if (!net.net.controllable(mv.transition)) return true;
  }
  return false;
}

std::optional<StateId> GameStructure::tau(StateId s, TransitionId t) const {
  for (const GameMove& mv : moves.at(s)) {
    if (mv.transition == t) return mv.target;
  }
  return std::nullopt;
}

std::optional<StateId> GameStructure::find(const Marking& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<TransitionId> GameStructure::class_options(ClassId c) const {
  std::vector<TransitionId> out;
  const Observation& obs = class_observation.at(c);
  for (TransitionId t : net.base.controllable_transitions()) {
    Marking pre = net.base.preset(t);
    pre.resize(obs.size());
    if (pre.is_subset_of(obs)) out.push_back(t);
  }
  return out;
}

GameStructure derive_game(const ExtendedNet& ext, const MarkingGraph& mg,
                          const ObservationPartition& partition) {
  const NetSystem& net = ext.net;
  GameStructure game(ext);

  // Step 4: drop controllable edges not enabled in the observed stable part.
  std::vector<std::vector<std::size_t>> kept(mg.state_count());
  for (StateId s = 0; s < mg.state_count(); ++s) {
    for (std::size_t e : mg.out_edges(s)) {
      const GraphEdge& edge = mg.edges()[e];
      if (net.controllable(edge.transition)) {
        Marking pre = ext.base.preset(edge.transition);
        pre.resize(net.place_count());
        if (!pre.is_subset_of(partition.observation[s])) {
          game.pruned.push_back(
              PrunedEdge{mg.marking(s), edge.transition, mg.marking(edge.target)});
          continue;
        }
      }
      kept[s].push_back(e);
    }
  }

  // M^r: states reachable over kept edges, re-indexed in BFS order.
  constexpr StateId none = UINT32_MAX;
  std::vector<StateId> renumber(mg.state_count(), none);
  std::vector<StateId> order{mg.initial()};
  renumber[mg.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t e : kept[order[i]]) {
      const StateId target = mg.edges()[e].target;
      if (renumber[target] == none) {
        renumber[target] = static_cast<StateId>(order.size());
        order.push_back(target);
      }
    }
  }

  std::unordered_map<ClassId, ClassId> class_renumber;
  for (StateId old : order) {
    const StateId s = renumber[old];
    game.states.push_back(mg.marking(old));
    game.index_.emplace(mg.marking(old), s);
    game.stable.push_back(partition.stable[old]);
    game.observation.push_back(partition.observation[old]);
    auto [it, inserted] = class_renumber.try_emplace(
        partition.class_of[old], static_cast<ClassId>(game.class_observation.size()));
    if (inserted) game.class_observation.push_back(partition.class_observation[partition.class_of[old]]);
    game.class_of.push_back(it->second);

    std::vector<GameMove> mv;
    for (std::size_t e : kept[old]) {
      mv.push_back(GameMove{mg.edges()[e].transition, renumber[mg.edges()[e].target]});
    }
    game.moves.push_back(std::move(mv));
  }

  game.fairness.environment = ext.base.environment_transitions();
  return game;
}

GameStructure derive_game(const ExtendedNet& ext, const ExploreOptions& options) {
  const MarkingGraph mg = build_marking_graph(ext.net, options);
  return derive_game(ext, mg, observation_partition(ext, mg));
}

std::vector<TransitionId> sharp(const GameStructure& game, TransitionId t, StateId m) {
  const NetSystem& net = game.net.net;
  if (net.controllable(t)) {
    throw Error(Errc::NotEnvironment, "'" + net.transition(t).name + "' is controllable");
  }
  const Marking& marking = game.states.at(m);
  if (!is_enabled(net, marking, t)) return {};
  std::vector<TransitionId> out;
  for (TransitionId other : net.environment_transitions()) {
    if (other == t ||
        (is_enabled(net, marking, other) && net.preset(other).intersects(net.preset(t)))) {
      out.push_back(other);
    }
  }
  return out;
}

}  // namespace petrigame
