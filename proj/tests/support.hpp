#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "petrigame/error.hpp"
#include "petrigame/ltl/formula.hpp"
#include "petrigame/ltl/kripke_model.hpp"
#include "petrigame/marking_graph.hpp"
#include "petrigame/net.hpp"

namespace testsupport {

using namespace petrigame;

inline std::string fixture_path(const std::string& name) {
  return std::string(PETRIGAME_FIXTURES) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline NetSystem fixture(const std::string& name) {
  return parse_net(read_text(fixture_path(name + ".json")));
}

inline const char* kSatGoal = "F(p4 & p5) | F((p3 | p7) & p6)";

struct RandomNetShape {
  std::size_t max_places = 6;
  std::size_t max_transitions = 6;
  double controllable = 0.5;
  double observable = 1.0;
};

// A random net that is 1-safe (its marking graph builds without a safety
// violation), with 2..max_places places and 1..max_transitions transitions.
inline NetSystem random_net(std::mt19937& rng, const RandomNetShape& shape = {}) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (;;) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, shape.max_places)(rng);
    const std::size_t m =
        std::uniform_int_distribution<std::size_t>(1, shape.max_transitions)(rng);
    auto subset = [&](std::size_t max_size) {
      const std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
      std::set<PlaceId> s;
      while (s.size() < k) {
        s.insert(static_cast<PlaceId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)));
      }
      return std::vector<PlaceId>(s.begin(), s.end());
    };
    std::vector<Place> places;
    for (std::size_t i = 0; i < n; ++i) {
      places.push_back(Place{"p" + std::to_string(i), coin(rng) < shape.observable, false});
    }
    // Half the nets are synchronised one-token state machines: safe by
    // construction and with more concurrency than free arcs usually give.
    std::vector<std::size_t> component(n);
    const std::size_t parts = std::uniform_int_distribution<std::size_t>(1, (n + 1) / 2)(rng);
    for (std::size_t i = 0; i < n; ++i) component[i] = i % parts;
    const bool machines = n >= 2 * parts && coin(rng) < 0.5;
    auto in_component = [&](std::size_t c) {
      std::vector<PlaceId> ps;
      for (std::size_t i = 0; i < n; ++i) {
        if (component[i] == c) ps.push_back(static_cast<PlaceId>(i));
      }
      return ps[std::uniform_int_distribution<std::size_t>(0, ps.size() - 1)(rng)];
    };
    std::vector<Transition> transitions;
    const std::size_t count = machines ? shape.max_transitions : m;
    for (std::size_t j = 0; j < count; ++j) {
      Transition t{"t" + std::to_string(j), {}, {}, coin(rng) < shape.controllable};
      if (machines) {
        const std::size_t c1 = rng() % parts, c2 = rng() % parts;
        for (std::size_t c : std::set<std::size_t>{c1, c2}) {
          t.pre.push_back(in_component(c));
          t.post.push_back(in_component(c));
        }
      } else {
        t.pre = subset(2);
        t.post = subset(2);
      }
      if (t.controllable) {
        for (PlaceId p : t.pre) places[p].observable = true;
      }
      transitions.push_back(std::move(t));
    }
    std::vector<PlaceId> initial;
    if (machines) {
      for (std::size_t c = 0; c < parts; ++c) initial.push_back(in_component(c));
      std::sort(initial.begin(), initial.end());
    } else {
      initial = subset(std::min<std::size_t>(n, 3));
    }
    try {
      NetSystem net(places, transitions, initial);
      build_marking_graph(net, ExploreOptions{4096});
      return net;
    } catch (const Error&) {
      continue;
    }
  }
}

// Independent reachability: markings as bit masks, plain worklist.
inline std::set<std::uint64_t> reachable_masks(const NetSystem& net) {
  auto mask_of = [](const std::vector<PlaceId>& ps) {
    std::uint64_t m = 0;
    for (PlaceId p : ps) m |= std::uint64_t{1} << p;
    return m;
  };
  std::uint64_t init = 0;
  for (PlaceId p = 0; p < net.place_count(); ++p) {
    if (net.initial().test(p)) init |= std::uint64_t{1} << p;
  }
  std::set<std::uint64_t> seen{init};
  std::vector<std::uint64_t> work{init};
  while (!work.empty()) {
    const std::uint64_t m = work.back();
    work.pop_back();
    for (const Transition& t : net.transitions()) {
      const std::uint64_t pre = mask_of(t.pre), post = mask_of(t.post);
      if ((m & pre) != pre) continue;
      const std::uint64_t next = (m & ~pre) | post;
      if (seen.insert(next).second) work.push_back(next);
    }
  }
  return seen;
}

inline std::uint64_t mask_of(const Marking& m) {
  std::uint64_t out = 0;
  for (auto p = m.find_first(); p != Marking::npos; p = m.find_next(p)) out |= std::uint64_t{1} << p;
  return out;
}

// Random LTL formula without X over the given atoms.
inline ltl::Formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms,
                                   int depth) {
  using ltl::Formula;
  std::uniform_int_distribution<int> pick_atom(0, static_cast<int>(atoms.size()) - 1);
  if (depth == 0 || std::uniform_int_distribution<int>(0, 4)(rng) == 0) {
    const int leaf = std::uniform_int_distribution<int>(0, 9)(rng);
    if (leaf == 0) return Formula::truth();
    if (leaf == 1) return Formula::falsity();
    return Formula::atom(atoms[pick_atom(rng)]);
  }
  auto sub = [&] { return random_formula(rng, atoms, depth - 1); };
  switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
    case 0: return Formula::negation(sub());
    case 1: return Formula::conjunction(sub(), sub());
    case 2: return Formula::disjunction(sub(), sub());
    case 3: return Formula::implication(sub(), sub());
    case 4: return Formula::until(sub(), sub());
    case 5: return Formula::release(sub(), sub());
    case 6:
    case 7: return Formula::finally(sub());
    default: return Formula::globally(sub());
  }
}

inline ltl::AtomResolver resolver_for(const std::vector<std::string>& atoms) {
  return [atoms](std::string_view a) -> std::optional<ltl::PropId> {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i] == a) return static_cast<ltl::PropId>(i);
    }
    return std::nullopt;
  };
}

inline ltl::Valuation valuation(std::size_t width, std::uint64_t bits) {
  ltl::Valuation v(width);
  for (std::size_t i = 0; i < width; ++i) {
    if (bits >> i & 1) v.set(i);
  }
  return v;
}

// Random Kripke model whose every state has a successor.
inline ltl::KripkeModel random_kripke(std::mt19937& rng, std::size_t states,
                                      const std::vector<std::string>& atoms,
                                      std::size_t max_degree) {
  ltl::KripkeModel k;
  k.propositions = atoms;
  for (std::size_t s = 0; s < states; ++s) {
    const auto bits =
        std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << atoms.size()) - 1)(rng);
    k.labels.push_back(valuation(atoms.size(), bits));
    const std::size_t d = std::uniform_int_distribution<std::size_t>(1, max_degree)(rng);
    std::set<ltl::KState> succ;
    while (succ.size() < d) {
      succ.insert(static_cast<ltl::KState>(
          std::uniform_int_distribution<std::size_t>(0, states - 1)(rng)));
    }
    k.successors.emplace_back(succ.begin(), succ.end());
  }
  return k;
}

}  // namespace testsupport
