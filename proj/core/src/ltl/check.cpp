#include "petrigame/ltl/check.hpp"

#include <deque>
#include <unordered_map>

#include "petrigame/error.hpp"

namespace petrigame::ltl {

const char* to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Holds: return "Holds";
    case Verdict::Kind::Fails: return "Fails";
    case Verdict::Kind::Vacuous: return "Vacuous";
  }
  return "?";
}

namespace {

using Set = boost::dynamic_bitset<>;
using Node = std::uint32_t;

struct Graph {
  std::vector<std::vector<Node>> succ;
  std::vector<Node> initial;
  std::vector<Set> acceptance;
};

struct Path {
  std::vector<Node> stem;
  std::vector<Node> cycle;
};

// Shortest path of at least one edge from `from` to a node satisfying `goal`,
// staying inside `within`. Returned without `from`.
template <class Goal>
std::vector<Node> shortest_path(const Graph& g, Node from, const Set& within, Goal goal) {
  constexpr Node kFirst = UINT32_MAX;
  std::vector<Node> parent(g.succ.size(), kFirst);
  std::vector<char> seen(g.succ.size(), 0);
  std::deque<Node> queue;
  auto finish = [&](Node end) {
    std::vector<Node> path{end};
    for (Node n = end; parent[n] != kFirst;) {
      n = parent[n];
      path.push_back(n);
    }
    return std::vector<Node>(path.rbegin(), path.rend());
  };
  for (Node s : g.succ[from]) {
    if (!within.test(s) || seen[s]) continue;
    seen[s] = 1;
    if (goal(s)) return {s};
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const Node n = queue.front();
    queue.pop_front();
    for (Node s : g.succ[n]) {
      if (!within.test(s) || seen[s]) continue;
      seen[s] = 1;
      parent[s] = n;
      if (goal(s)) return finish(s);
      queue.push_back(s);
    }
  }
  return {};
}

std::vector<Node> stem_to(const Graph& g, Node target) {
  std::vector<Node> parent(g.succ.size(), UINT32_MAX);
  std::vector<char> seen(g.succ.size(), 0);
  std::deque<Node> queue;
  for (Node i : g.initial) {
    if (!seen[i]) {
      seen[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty() && !seen[target]) {
    const Node n = queue.front();
    queue.pop_front();
    for (Node s : g.succ[n]) {
      if (seen[s]) continue;
      seen[s] = 1;
      parent[s] = n;
      queue.push_back(s);
    }
  }
  std::vector<Node> path;
  for (Node n = target; parent[n] != UINT32_MAX;) {
    n = parent[n];
    path.push_back(n);
  }
  return std::vector<Node>(path.rbegin(), path.rend());
}

Path extract(const Graph& g, const Set& scc) {
  const Node anchor = static_cast<Node>(scc.find_first());
  Path out;
  out.stem = stem_to(g, anchor);
  out.cycle.push_back(anchor);
  Node at = anchor;
  for (const Set& acc : g.acceptance) {
    if (acc.test(at)) continue;
    auto leg = shortest_path(g, at, scc, [&](Node n) { return acc.test(n); });
    out.cycle.insert(out.cycle.end(), leg.begin(), leg.end());
    at = out.cycle.back();
  }
  auto back = shortest_path(g, at, scc, [&](Node n) { return n == anchor; });
  out.cycle.insert(out.cycle.end(), back.begin(), back.end() - 1);
  return out;
}

// Iterative Tarjan over the part reachable from the initial nodes; stops at
// the first non-trivial SCC that meets every acceptance set.
std::optional<Path> accepting_lasso(const Graph& g) {
  const std::size_t n = g.succ.size();
  constexpr Node kUnvisited = UINT32_MAX;
  std::vector<Node> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Node> stack;
  std::vector<std::pair<Node, std::size_t>> frames;
  Node counter = 0;

  for (Node root : g.initial) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < g.succ[v].size()) {
        const Node w = g.succ[v][next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Node done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Node parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] != index[done]) continue;

      Set scc(n);
      std::size_t size = 0;
      Node w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        scc.set(w);
        ++size;
      } while (w != done);
      bool cyclic = size > 1;
      if (!cyclic) {
        for (Node s : g.succ[done]) cyclic = cyclic || s == done;
      }
      if (!cyclic) continue;
      bool accepting = true;
      for (const Set& acc : g.acceptance) accepting = accepting && acc.intersects(scc);
      if (accepting) return extract(g, scc);
    }
  }
  return std::nullopt;
}

Set fairness_set(const KripkeModel& model, PropId a) {
  Set s(model.state_count());
  for (KState k = 0; k < model.state_count(); ++k) {
    if (model.holds(k, a)) s.set(k);
  }
  return s;
}

}  // namespace

std::vector<Valuation> word_of(const KripkeModel& model, const std::vector<KState>& states) {
  std::vector<Valuation> out;
  out.reserve(states.size());
  for (KState s : states) out.push_back(model.labels[s]);
  return out;
}

std::optional<Lasso> find_fair_lasso(const KripkeModel& model, std::span<const PropId> fairness) {
  if (model.state_count() == 0) return std::nullopt;
  Graph g;
  g.succ = model.successors;
  g.initial = {model.initial};
  for (PropId a : fairness) g.acceptance.push_back(fairness_set(model, a));
  auto path = accepting_lasso(g);
  if (!path) return std::nullopt;
  return Lasso{std::move(path->stem), std::move(path->cycle)};
}

bool exists_fair_path(const KripkeModel& model, std::span<const PropId> fairness) {
  return find_fair_lasso(model, fairness).has_value();
}

Verdict check_fair(const KripkeModel& model, const Formula& goal,
                   std::span<const PropId> fairness) {
  const FlatFormula negated =
      compile(nnf(Formula::negation(goal)), [&](std::string_view a) { return model.find(a); });
  if (!exists_fair_path(model, fairness)) return Verdict{Verdict::Kind::Vacuous, std::nullopt};

  const GeneralizedBuchi gba = to_buchi(negated);
  const auto q_count = static_cast<std::uint64_t>(gba.states.size());

  // Product over pairs (Kripke state, automaton state) whose label agrees.
  Graph g;
  std::vector<KState> k_of;
  std::vector<std::uint32_t> q_of;
  std::unordered_map<std::uint64_t, Node> ids;
  std::deque<Node> queue;
  auto intern = [&](KState k, std::uint32_t q) -> std::optional<Node> {
    if (!gba.admits(q, model.labels[k])) return std::nullopt;
    const std::uint64_t key = k * q_count + q;
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<Node>(k_of.size());
    ids.emplace(key, id);
    k_of.push_back(k);
    q_of.push_back(q);
    g.succ.emplace_back();
    queue.push_back(id);
    return id;
  };
  for (std::uint32_t q : gba.initial) {
    if (auto id = intern(model.initial, q)) g.initial.push_back(*id);
  }
  while (!queue.empty()) {
    const Node n = queue.front();
    queue.pop_front();
    for (KState k2 : model.successors[k_of[n]]) {
      for (std::uint32_t q2 : gba.states[q_of[n]].successors) {
        if (auto id = intern(k2, q2)) g.succ[n].push_back(*id);
      }
    }
  }

  const std::size_t n = k_of.size();
  for (const auto& set : gba.acceptance) {
    Set members(gba.states.size());
    for (auto q : set) members.set(q);
    Set acc(n);
    for (Node i = 0; i < n; ++i) {
      if (members.test(q_of[i])) acc.set(i);
    }
    g.acceptance.push_back(std::move(acc));
  }
  for (PropId a : fairness) {
    Set acc(n);
    for (Node i = 0; i < n; ++i) {
      if (model.holds(k_of[i], a)) acc.set(i);
    }
    g.acceptance.push_back(std::move(acc));
  }

  auto path = accepting_lasso(g);
  if (!path) return Verdict{Verdict::Kind::Holds, std::nullopt};
  Lasso lasso;
  for (Node i : path->stem) lasso.stem.push_back(k_of[i]);
  for (Node i : path->cycle) lasso.cycle.push_back(k_of[i]);
  // Product states differ where model states coincide; fold a stem suffix
  // that repeats the cycle end into the cycle. The path is unchanged.
  while (!lasso.stem.empty() && lasso.stem.back() == lasso.cycle.back()) {
    lasso.cycle.insert(lasso.cycle.begin(), lasso.stem.back());
    lasso.cycle.pop_back();
    lasso.stem.pop_back();
  }
  return Verdict{Verdict::Kind::Fails, std::move(lasso)};
}

}  // namespace petrigame::ltl
