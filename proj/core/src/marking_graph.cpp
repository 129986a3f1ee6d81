#include "petrigame/marking_graph.hpp"

#include <deque>

#include "petrigame/error.hpp"

namespace petrigame {

std::optional<StateId> MarkingGraph::find(const Marking& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

MarkingGraph build_marking_graph(const NetSystem& net, const ExploreOptions& options) {
  MarkingGraph mg;
  mg.by_label_.resize(net.transition_count());

  auto intern = [&](const Marking& m) -> std::pair<StateId, bool> {
    auto [it, inserted] = mg.index_.try_emplace(m, static_cast<StateId>(mg.states_.size()));
    if (inserted) {
      if (mg.states_.size() >= options.state_cap) {
        throw Error(Errc::StateCapExceeded, "marking graph exceeds the state cap of " +
                                                std::to_string(options.state_cap));
      }
      mg.states_.push_back(m);
      mg.out_.emplace_back();
    }
    return {it->second, inserted};
  };

  std::deque<StateId> queue;
  queue.push_back(intern(net.initial()).first);
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (TransitionId t : enabled_at(net, mg.states_[s])) {
      Marking next = fire(net, mg.states_[s], t);
      auto [target, fresh] = intern(next);
      if (fresh) queue.push_back(target);
      const std::size_t e = mg.edges_.size();
      mg.edges_.push_back(GraphEdge{s, t, target});
      mg.out_[s].push_back(e);
      mg.by_label_[t].push_back(e);
    }
  }
  return mg;
}

namespace {

enum class Crossing { None, Enter, Exit };

Crossing crossing(const StateSet& r, const GraphEdge& e) {
  const bool from = r.test(e.source);
  const bool to = r.test(e.target);
  if (!from && to) return Crossing::Enter;
  if (from && !to) return Crossing::Exit;
  return Crossing::None;
}

}  // namespace

bool is_region(const MarkingGraph& mg, const StateSet& states) {
  for (TransitionId t = 0; t < mg.transition_count(); ++t) {
    const auto& labelled = mg.edges_labelled(t);
    if (labelled.empty()) continue;
    const Crossing first = crossing(states, mg.edges()[labelled.front()]);
    for (std::size_t e : labelled) {
      if (crossing(states, mg.edges()[e]) != first) return false;
    }
  }
  return true;
}

RegionBoundary region_boundary(const MarkingGraph& mg, const StateSet& states) {
  if (!is_region(mg, states)) throw Error(Errc::NotARegion, "state set is not a region");
  RegionBoundary b;
  for (TransitionId t = 0; t < mg.transition_count(); ++t) {
    const auto& labelled = mg.edges_labelled(t);
    if (labelled.empty()) continue;
    switch (crossing(states, mg.edges()[labelled.front()])) {
      case Crossing::Enter: b.entering.push_back(t); break;
      case Crossing::Exit: b.exiting.push_back(t); break;
      case Crossing::None: break;
    }
  }
  return b;
}

}  // namespace petrigame
