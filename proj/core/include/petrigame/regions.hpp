#pragma once

#include <string>
#include <vector>

#include "petrigame/marking_graph.hpp"

namespace petrigame {

struct RegionOrigin {
  enum class Kind { Place, Complement, Union };
  Kind kind = Kind::Place;
  PlaceId place = 0;  // Kind::Place
  // Operand positions in the owning closure; -1 when built outside a closure.
  int lhs = -1;
  int rhs = -1;
};

/// A region of one marking graph. Identity is the state set; the name is a
/// readable hint ("p3|p7", "p1^c") and does not take part in comparisons.
struct Region {
  StateSet states;
  RegionOrigin origin;
  std::string name;

  bool operator==(const Region& other) const { return states == other.states; }
};

struct ClosureOptions {
  std::size_t region_cap = std::size_t{1} << 14;
};

Region place_extension(const NetSystem& net, const MarkingGraph& mg, PlaceId p);
Region complement(const MarkingGraph& mg, const Region& r);

// r1 \ r2, r1 n r2 and r2 \ r1 are all regions. Any witness decomposition
// u1, u2, u3 is forced to be exactly these three sets.
bool compatible(const MarkingGraph& mg, const Region& r1, const Region& r2);

// Throws NotCompatible.
Region union_compatible(const MarkingGraph& mg, const Region& r1, const Region& r2);

// Least set containing the extensions of `observable` and closed under
// complement and compatible union. The empty and full state sets are left
// out. Regions appear in discovery order. Throws ClosureCapExceeded.
std::vector<Region> observable_closure(const NetSystem& net, const MarkingGraph& mg,
                                       const std::vector<PlaceId>& observable,
                                       const ClosureOptions& options = {});

/// Sigma': the base net plus one implicit place per closure region that is not
/// already the extension of a base place. Base places keep their ids; implicit
/// places follow them.
struct ExtendedNet {
  NetSystem base;
  NetSystem net;
  std::vector<Region> implicit_regions;  // aligned with places [base count, ...)

  std::size_t base_place_count() const { return base.place_count(); }
  // Drops implicit places.
  Marking project(const Marking& extended) const;
};

ExtendedNet extend_net(const NetSystem& net, const MarkingGraph& mg,
                       const std::vector<Region>& closure);

}  // namespace petrigame
