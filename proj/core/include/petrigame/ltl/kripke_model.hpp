#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "petrigame/ltl/formula.hpp"

namespace petrigame::ltl {

using KState = std::uint32_t;

/// Explicit Kripke structure over named propositions.
struct KripkeModel {
  std::vector<std::string> propositions;
  std::vector<Valuation> labels;  // per state, sized to propositions
  std::vector<std::vector<KState>> successors;
  KState initial = 0;

  std::size_t state_count() const { return labels.size(); }
  std::optional<PropId> find(std::string_view name) const {
    for (std::size_t i = 0; i < propositions.size(); ++i) {
      if (propositions[i] == name) return static_cast<PropId>(i);
    }
    return std::nullopt;
  }
  bool holds(KState s, PropId p) const { return labels[s].test(p); }
};

}  // namespace petrigame::ltl
