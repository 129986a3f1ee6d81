#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "petrigame/net.hpp"

namespace petrigame {

using StateId = std::uint32_t;

// Membership set over the states of one MarkingGraph.
using StateSet = boost::dynamic_bitset<>;

struct GraphEdge {
  StateId source;
  TransitionId transition;
  StateId target;
};

struct ExploreOptions {
  std::size_t state_cap = std::size_t{1} << 20;
};

/// Sequential marking graph: reachable markings (state 0 is the initial one)
/// and the transition-labelled firing edges between them.
class MarkingGraph {
 public:
  MarkingGraph() = default;

  std::size_t state_count() const { return states_.size(); }
  std::size_t transition_count() const { return by_label_.size(); }
  StateId initial() const { return 0; }

  const Marking& marking(StateId s) const { return states_.at(s); }
  const std::vector<Marking>& markings() const { return states_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  // Indices into edges(), ordered by transition id.
  const std::vector<std::size_t>& out_edges(StateId s) const { return out_.at(s); }
  const std::vector<std::size_t>& edges_labelled(TransitionId t) const { return by_label_.at(t); }

  std::optional<StateId> find(const Marking& m) const;
  StateSet empty_set() const { return StateSet(states_.size()); }
  StateSet full_set() const { return ~empty_set(); }

 private:
  friend MarkingGraph build_marking_graph(const NetSystem&, const ExploreOptions&);

  std::vector<Marking> states_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> by_label_;
  std::unordered_map<Marking, StateId> index_;
};

// Breadth-first closure of the firing rule from the initial marking.
// Throws SafetyViolation or StateCapExceeded.
MarkingGraph build_marking_graph(const NetSystem& net, const ExploreOptions& options = {});

// Uniform crossing: for each label, either every edge enters the set, every
// edge leaves it, or no edge crosses its border.
bool is_region(const MarkingGraph& mg, const StateSet& states);

struct RegionBoundary {
  std::vector<TransitionId> entering;
  std::vector<TransitionId> exiting;
};

// Entering (pre) and exiting (post) labels of a region. Throws NotARegion.
RegionBoundary region_boundary(const MarkingGraph& mg, const StateSet& states);

}  // namespace petrigame
