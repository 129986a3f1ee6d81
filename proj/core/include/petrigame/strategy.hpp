#pragma once

#include <optional>
#include <vector>

#include "petrigame/stability.hpp"

namespace petrigame {

/// Game-level strategy: one controllable transition, or idling (nullopt), per
/// observation class.
struct Strategy {
  std::vector<std::optional<TransitionId>> choice;  // indexed by ClassId

  std::optional<TransitionId> at(ClassId c) const {
    return c < choice.size() ? choice[c] : std::nullopt;
  }
  bool operator==(const Strategy&) const = default;
};

}  // namespace petrigame
