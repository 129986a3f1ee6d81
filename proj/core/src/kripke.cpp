#include "petrigame/kripke.hpp"

#include <deque>

#include "petrigame/error.hpp"

namespace petrigame {

EncodedModel encode(const GameStructure& game, const Strategy& f) {
  const NetSystem& net = game.net.net;
  const auto& env = net.environment_transitions();
  const std::size_t places = net.place_count();

  EncodedModel out;
  out.place_props = places;
  auto& k = out.model;
  for (const Place& p : net.places()) k.propositions.push_back(p.name);
  for (TransitionId t : env) k.propositions.push_back(net.transition(t).name);
  k.propositions.push_back("u");
  k.propositions.push_back("env");
  const std::size_t width = k.propositions.size();
  for (std::size_t i = places; i < width; ++i) out.fairness.push_back(static_cast<ltl::PropId>(i));
  const ltl::PropId u = static_cast<ltl::PropId>(width - 2);
  const ltl::PropId env_atom = static_cast<ltl::PropId>(width - 1);

  std::vector<std::size_t> env_slot(net.transition_count(), 0);
  for (std::size_t i = 0; i < env.size(); ++i) env_slot[env[i]] = i;

  auto props_of = [&](StateId s) {
    ltl::Valuation v(width);
    const Marking& m = game.states[s];
    for (auto p = m.find_first(); p != Marking::npos; p = m.find_next(p)) v.set(p);
    return v;
  };
  auto add_state = [&](ltl::Valuation label, KripkeOrigin origin) {
    const auto id = static_cast<ltl::KState>(k.labels.size());
    k.labels.push_back(std::move(label));
    k.successors.emplace_back();
    out.origin.push_back(origin);
    return id;
  };

  constexpr ltl::KState none = UINT32_MAX;
  std::vector<ltl::KState> k_of(game.state_count(), none);
  std::deque<StateId> queue;
  auto visit = [&](StateId s) {
    if (k_of[s] == none) {
      k_of[s] = add_state(props_of(s), KripkeOrigin{KripkeOrigin::Kind::GameState, s, {}, 0});
      queue.push_back(s);
    }
    return k_of[s];
  };

  visit(game.initial());
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    const ltl::KState ks = k_of[s];
    const auto selected = f.at(game.class_of[s]);
    const bool env_move = game.env_enabled(s);

    if (selected && !game.tau(s, *selected)) {
      throw Error(Errc::StrategySelectsDisabled,
                  "strategy selects '" + net.transition(*selected).name + "' which " +
                      net.format(game.states[s]) + " cannot fire");
    }

    ltl::Valuation base = props_of(s);
    for (TransitionId t : env) {
      if (!is_enabled(net, game.states[s], t)) base.set(places + env_slot[t]);
    }
    if (!selected) base.set(u);
    if (!env_move) base.set(env_atom);

    for (const GameMove& mv : game.moves[s]) {
      const bool controllable = net.controllable(mv.transition);
      if (controllable && mv.transition != selected) continue;
      ltl::Valuation label = base;
      if (controllable) {
        label.set(u);
      } else {
        label.set(env_atom);
        for (TransitionId c : sharp(game, mv.transition, s)) label.set(places + env_slot[c]);
      }
      const ltl::KState l = add_state(
          std::move(label),
          KripkeOrigin{KripkeOrigin::Kind::Intermediate, s, mv.transition, mv.target});
      k.successors[ks].push_back(l);
      const ltl::KState target = visit(mv.target);
      k.successors[l].push_back(target);
    }

    if (!env_move && !selected) {
      ltl::Valuation label = props_of(s);
      for (ltl::PropId a : out.fairness) label.set(a);
      const ltl::KState partner =
          add_state(std::move(label), KripkeOrigin{KripkeOrigin::Kind::DeadlockPartner, s, {}, 0});
      k.successors[ks].push_back(partner);
      k.successors[partner].push_back(ks);
    }
  }
  return out;
}

}  // namespace petrigame
