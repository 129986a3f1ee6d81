#include "petrigame/regions.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "petrigame/error.hpp"

namespace petrigame {

Region place_extension(const NetSystem& net, const MarkingGraph& mg, PlaceId p) {
  Region r{mg.empty_set(), RegionOrigin{RegionOrigin::Kind::Place, p, -1, -1},
           net.place(p).name};
  for (StateId s = 0; s < mg.state_count(); ++s) {
    if (mg.marking(s).test(p)) r.states.set(s);
  }
  return r;
}

Region complement(const MarkingGraph& mg, const Region& r) {
  (void)mg;
  const bool composite = r.name.find('|') != std::string::npos;
  return Region{~r.states, RegionOrigin{RegionOrigin::Kind::Complement, 0, -1, -1},
                composite ? "(" + r.name + ")^c" : r.name + "^c"};
}

bool compatible(const MarkingGraph& mg, const Region& r1, const Region& r2) {
  return is_region(mg, r1.states - r2.states) && is_region(mg, r1.states & r2.states) &&
         is_region(mg, r2.states - r1.states);
}

Region union_compatible(const MarkingGraph& mg, const Region& r1, const Region& r2) {
  if (!compatible(mg, r1, r2)) {
    throw Error(Errc::NotCompatible,
                "regions '" + r1.name + "' and '" + r2.name + "' are not compatible");
  }
  return Region{r1.states | r2.states, RegionOrigin{RegionOrigin::Kind::Union, 0, -1, -1},
                r1.name + "|" + r2.name};
}

std::vector<Region> observable_closure(const NetSystem& net, const MarkingGraph& mg,
                                       const std::vector<PlaceId>& observable,
                                       const ClosureOptions& options) {
  std::vector<Region> regions;
  std::unordered_map<StateSet, int> seen;
  std::deque<int> work;

  auto add = [&](Region r) {
    if (r.states.none() || r.states.all()) return;
    if (seen.count(r.states)) return;
    if (regions.size() >= options.region_cap) {
      throw Error(Errc::ClosureCapExceeded, "observable closure exceeds the region cap of " +
                                                std::to_string(options.region_cap));
    }
    const int id = static_cast<int>(regions.size());
    seen.emplace(r.states, id);
    regions.push_back(std::move(r));
    work.push_back(id);
  };

  for (PlaceId p : observable) add(place_extension(net, mg, p));

  while (!work.empty()) {
    const int id = work.front();
    work.pop_front();

    Region c = complement(mg, regions[id]);
    c.origin.lhs = id;
    add(std::move(c));

    // Every pair is tested once: when the later of the two is popped, the
    // earlier one is already present.
    const int existing = static_cast<int>(regions.size());
    for (int other = 0; other < existing; ++other) {
      if (other == id) continue;
      if (!compatible(mg, regions[id], regions[other])) continue;
      const int lhs = std::min(id, other);
      const int rhs = std::max(id, other);
      Region u = union_compatible(mg, regions[lhs], regions[rhs]);
      u.origin.lhs = lhs;
      u.origin.rhs = rhs;
      add(std::move(u));
    }
  }
  return regions;
}

Marking ExtendedNet::project(const Marking& extended) const {
  Marking m(base_place_count());
  for (PlaceId p = 0; p < base_place_count(); ++p) {
    if (extended.test(p)) m.set(p);
  }
  return m;
}

ExtendedNet extend_net(const NetSystem& net, const MarkingGraph& mg,
                       const std::vector<Region>& closure) {
  std::vector<Place> places(net.places().begin(), net.places().end());
  std::vector<Transition> transitions(net.transitions().begin(), net.transitions().end());
  std::vector<PlaceId> initial;
  for (auto p = net.initial().find_first(); p != Marking::npos; p = net.initial().find_next(p)) {
    initial.push_back(static_cast<PlaceId>(p));
  }

  std::unordered_map<StateSet, PlaceId> base_extension;
  for (PlaceId p = 0; p < net.place_count(); ++p) {
    base_extension.emplace(place_extension(net, mg, p).states, p);
  }

  std::unordered_set<std::string> used_names;
  for (const auto& p : places) used_names.insert(p.name);

  std::vector<Region> implicit;
  for (const Region& r : closure) {
    if (!is_region(mg, r.states)) throw Error(Errc::NotARegion, "'" + r.name + "' is not a region");
    if (auto it = base_extension.find(r.states); it != base_extension.end()) {
      // The information is already carried by a base place; it becomes
      // observable in Sigma'.
      places[it->second].observable = true;
      continue;
    }
    const PlaceId h = static_cast<PlaceId>(places.size());
    std::string name = r.name;
    while (used_names.count(name)) name += "'";
    used_names.insert(name);
    places.push_back(Place{name, true, true});
    const RegionBoundary b = region_boundary(mg, r.states);
    for (TransitionId t : b.entering) transitions[t].post.push_back(h);
    for (TransitionId t : b.exiting) transitions[t].pre.push_back(h);
    if (r.states.test(mg.initial())) initial.push_back(h);
    base_extension.emplace(r.states, h);
    implicit.push_back(r);
    implicit.back().name = name;
  }

  return ExtendedNet{net, NetSystem(std::move(places), std::move(transitions), std::move(initial)),
                     std::move(implicit)};
}

}  // namespace petrigame
