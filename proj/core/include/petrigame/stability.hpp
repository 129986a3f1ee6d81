#pragma once

#include <cstdint>
#include <vector>

#include "petrigame/marking_graph.hpp"
#include "petrigame/regions.hpp"

namespace petrigame {

using ClassId = std::uint32_t;

// Observations are markings of Sigma' restricted to observable places.
using Observation = Marking;

// Markings reachable from m by environment transitions only (m first).
std::vector<Marking> env_closure(const ExtendedNet& ext, const Marking& m);

// Places of m that no environment-only firing sequence from m can bring to a
// marking where an environment transition consuming them is enabled.
Marking stable_part(const ExtendedNet& ext, const Marking& m);

// stable_part(m) n P'_O.
Observation observation(const ExtendedNet& ext, const Marking& m);

/// Partition of the states of MG(Sigma') by equal observation. Class ids are
/// assigned in order of first occurrence over the state indices.
struct ObservationPartition {
  std::vector<ClassId> class_of;
  std::vector<Observation> class_observation;
  std::vector<Marking> stable;
  std::vector<Observation> observation;

  std::size_t class_count() const { return class_observation.size(); }
};

ObservationPartition observation_partition(const ExtendedNet& ext, const MarkingGraph& mg);

}  // namespace petrigame
