#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace petrigame {

using PlaceId = std::uint32_t;
using TransitionId = std::uint32_t;

// A 1-safe marking is a set of places; bit i set means place i holds a token.
using Marking = boost::dynamic_bitset<>;

struct Place {
  std::string name;
  bool observable = false;
  bool implicit = false;
};

struct Transition {
  std::string name;
  std::vector<PlaceId> pre;
  std::vector<PlaceId> post;
  bool controllable = false;
};

/// Immutable 1-safe net system with controllable transitions and observable
/// places. Construction validates the structural invariants; a NetSystem that
/// exists is well formed.
class NetSystem {
 public:
  NetSystem(std::vector<Place> places, std::vector<Transition> transitions,
            std::vector<PlaceId> initial);

  std::size_t place_count() const { return places_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }

  const Place& place(PlaceId p) const { return places_.at(p); }
  const Transition& transition(TransitionId t) const { return transitions_.at(t); }
  std::span<const Place> places() const { return places_; }
  std::span<const Transition> transitions() const { return transitions_; }

  const Marking& initial() const { return initial_; }
  const Marking& preset(TransitionId t) const { return presets_.at(t); }
  const Marking& postset(TransitionId t) const { return postsets_.at(t); }
  const Marking& observable() const { return observable_; }

  bool controllable(TransitionId t) const { return transitions_.at(t).controllable; }
  const std::vector<TransitionId>& environment_transitions() const { return environment_; }
  const std::vector<TransitionId>& controllable_transitions() const { return controllable_; }

  std::optional<PlaceId> find_place(std::string_view name) const;
  std::optional<TransitionId> find_transition(std::string_view name) const;

  Marking empty_marking() const { return Marking(places_.size()); }
  // Throws Errc::UnknownPlace for names that are not places of this net.
  Marking marking_of(std::span<const std::string> names) const;
  Marking marking_of(std::initializer_list<std::string_view> names) const;
  std::vector<std::string> names_of(const Marking& m) const;
  // "{p1,p2}" in place order.
  std::string format(const Marking& m) const;

 private:
  std::vector<Place> places_;
  std::vector<Transition> transitions_;
  Marking initial_;
  std::vector<Marking> presets_;
  std::vector<Marking> postsets_;
  Marking observable_;
  std::vector<TransitionId> environment_;
  std::vector<TransitionId> controllable_;
  std::unordered_map<std::string, PlaceId> place_index_;
  std::unordered_map<std::string, TransitionId> transition_index_;
};

bool is_enabled(const NetSystem& net, const Marking& m, TransitionId t);

// Transitions whose pre-set is contained in m, in declaration order.
std::vector<TransitionId> enabled_at(const NetSystem& net, const Marking& m);

// Firing rule m' = (m \ pre(t)) u post(t). Throws NotEnabled, or
// SafetyViolation when a post-place outside the pre-set is already marked.
Marking fire(const NetSystem& net, const Marking& m, TransitionId t);

// JSON net document:
// {"places":[..], "transitions":[{"name","pre","post","controllable"}],
//  "initial":[..], "observable":[..]}
NetSystem parse_net(std::string_view text);
std::string write_net(const NetSystem& net);

}  // namespace petrigame
