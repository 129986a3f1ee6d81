#include "petrigame/stability.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace petrigame {

std::vector<Marking> env_closure(const ExtendedNet& ext, const Marking& m) {
  const NetSystem& net = ext.net;
  std::vector<Marking> out{m};
  std::unordered_set<Marking> seen{m};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (TransitionId t : net.environment_transitions()) {
      if (!is_enabled(net, out[i], t)) continue;
      Marking next = fire(net, out[i], t);
      if (seen.insert(next).second) out.push_back(std::move(next));
    }
  }
  return out;
}

Marking stable_part(const ExtendedNet& ext, const Marking& m) {
  const NetSystem& net = ext.net;
  Marking threatened = net.empty_marking();
  for (const Marking& reached : env_closure(ext, m)) {
    for (TransitionId t : net.environment_transitions()) {
      if (is_enabled(net, reached, t)) threatened |= net.preset(t);
    }
  }
  return m - threatened;
}

Observation observation(const ExtendedNet& ext, const Marking& m) {
  return stable_part(ext, m) & ext.net.observable();
}

namespace {

// Places threatened from each state: pre-sets of environment transitions
// enabled anywhere in the state's environment closure. Computed once per
// strongly connected component of the environment-edge subgraph.
std::vector<Marking> threatened_places(const NetSystem& net, const MarkingGraph& mg) {
  const std::size_t n = mg.state_count();
  std::vector<std::vector<StateId>> succ(n);
  std::vector<Marking> local(n, net.empty_marking());
  for (StateId s = 0; s < n; ++s) {
    for (std::size_t e : mg.out_edges(s)) {
      const GraphEdge& edge = mg.edges()[e];
      if (net.controllable(edge.transition)) continue;
      succ[s].push_back(edge.target);
      local[s] |= net.preset(edge.transition);
    }
  }

  // Iterative Tarjan; components are completed sinks first.
  constexpr std::uint32_t unvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::vector<Marking> result(n, net.empty_marking());
  std::vector<std::uint32_t> component_of(n, unvisited);
  std::uint32_t counter = 0;
  std::uint32_t components = 0;

  struct Frame {
    StateId state;
    std::size_t next;
  };
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < succ[f.state].size()) {
        const StateId w = succ[f.state][f.next++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.state] = std::min(low[f.state], index[w]);
        }
        continue;
      }
      const StateId v = f.state;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().state] = std::min(low[frames.back().state], low[v]);
      if (low[v] != index[v]) continue;

      std::vector<StateId> component;
      StateId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
        component_of[w] = components;
      } while (w != v);
      Marking acc = net.empty_marking();
      for (StateId s : component) {
        acc |= local[s];
        for (StateId t : succ[s]) {
          if (component_of[t] != components) acc |= result[t];
        }
      }
      for (StateId s : component) result[s] = acc;
      ++components;
    }
  }
  return result;
}

}  // namespace

ObservationPartition observation_partition(const ExtendedNet& ext, const MarkingGraph& mg) {
  const NetSystem& net = ext.net;
  const auto threatened = threatened_places(net, mg);

  ObservationPartition part;
  std::unordered_map<Observation, ClassId> classes;
  for (StateId s = 0; s < mg.state_count(); ++s) {
    Marking stable = mg.marking(s) - threatened[s];
    Observation obs = stable & net.observable();
    auto [it, inserted] =
        classes.try_emplace(obs, static_cast<ClassId>(part.class_observation.size()));
    if (inserted) part.class_observation.push_back(obs);
    part.class_of.push_back(it->second);
    part.stable.push_back(std::move(stable));
    part.observation.push_back(std::move(obs));
  }
  return part;
}

}  // namespace petrigame
