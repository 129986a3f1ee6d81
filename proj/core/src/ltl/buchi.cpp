#include "petrigame/ltl/buchi.hpp"

#include <algorithm>
#include <set>

namespace petrigame::ltl {

bool GeneralizedBuchi::admits(std::uint32_t q, const Valuation& v) const {
  const State& s = states[q];
  for (PropId p : s.positive) {
    if (p >= v.size() || !v.test(p)) return false;
  }
  for (PropId p : s.negative) {
    if (p < v.size() && v.test(p)) return false;
  }
  return true;
}

namespace {

using Set = boost::dynamic_bitset<>;
constexpr std::uint32_t kInit = UINT32_MAX;

struct TableauNode {
  Set old_set;
  Set next;
  std::set<PropId> positive;
  std::set<PropId> negative;
  std::set<std::uint32_t> incoming;
};

// Gerth, Peled, Vardi and Wolper's on-the-fly tableau, written with an
// explicit work stack instead of recursion.
class Tableau {
 public:
  explicit Tableau(const FlatFormula& f) : f_(f), width_(f.nodes.size()) {}

  std::vector<TableauNode> run() {
    Pending start{Set(width_), blank(), {kInit}};
    start.todo.set(static_cast<std::size_t>(f_.root));
    stack_.push_back(std::move(start));
    while (!stack_.empty()) {
      Pending p = std::move(stack_.back());
      stack_.pop_back();
      expand(std::move(p));
    }
    return std::move(done_);
  }

 private:
  struct Pending {
    Set todo;
    TableauNode node;
    std::set<std::uint32_t> incoming;
  };

  TableauNode blank() const { return TableauNode{Set(width_), Set(width_), {}, {}, {}}; }

  void expand(Pending p) {
    const auto pick = p.todo.find_first();
    if (pick == Set::npos) {
      for (auto& existing : done_) {
        if (existing.old_set == p.node.old_set && existing.next == p.node.next) {
          existing.incoming.insert(p.incoming.begin(), p.incoming.end());
          return;
        }
      }
      p.node.incoming = p.incoming;
      const auto id = static_cast<std::uint32_t>(done_.size());
      Set next = p.node.next;
      done_.push_back(std::move(p.node));
      stack_.push_back(Pending{std::move(next), blank(), {id}});
      return;
    }
    p.todo.reset(pick);
    const FlatNode& n = f_.nodes[pick];
    p.node.old_set.set(pick);
    auto add = [&](Pending& q, std::int32_t child) {
      if (!q.node.old_set.test(static_cast<std::size_t>(child))) q.todo.set(static_cast<std::size_t>(child));
    };
    switch (n.op) {
      case Op::True:
        stack_.push_back(std::move(p));
        return;
      case Op::False:
        return;
      case Op::Atom:
        if (p.node.negative.count(n.atom)) return;
        p.node.positive.insert(n.atom);
        stack_.push_back(std::move(p));
        return;
      case Op::Not: {
        const PropId a = f_.nodes[n.lhs].atom;
        if (p.node.positive.count(a)) return;
        p.node.negative.insert(a);
        stack_.push_back(std::move(p));
        return;
      }
      case Op::And:
        add(p, n.lhs);
        add(p, n.rhs);
        stack_.push_back(std::move(p));
        return;
      case Op::Or: {
        Pending other = p;
        add(p, n.lhs);
        add(other, n.rhs);
        stack_.push_back(std::move(other));
        stack_.push_back(std::move(p));
        return;
      }
      case Op::Until: {
        Pending other = p;
        add(p, n.lhs);
        p.node.next.set(pick);
        add(other, n.rhs);
        stack_.push_back(std::move(other));
        stack_.push_back(std::move(p));
        return;
      }
      case Op::Release: {
        Pending other = p;
        add(p, n.rhs);
        p.node.next.set(pick);
        add(other, n.lhs);
        add(other, n.rhs);
        stack_.push_back(std::move(other));
        stack_.push_back(std::move(p));
        return;
      }
      case Op::Finally: {
        Pending other = p;
        p.node.next.set(pick);
        add(other, n.lhs);
        stack_.push_back(std::move(other));
        stack_.push_back(std::move(p));
        return;
      }
      case Op::Globally:
        add(p, n.lhs);
        p.node.next.set(pick);
        stack_.push_back(std::move(p));
        return;
      case Op::Implies:
        break;  // excluded by negation normal form
    }
  }

  const FlatFormula& f_;
  std::size_t width_;
  std::vector<Pending> stack_;
  std::vector<TableauNode> done_;
};

}  // namespace

GeneralizedBuchi to_buchi(const FlatFormula& f) {
  std::vector<TableauNode> nodes = Tableau(f).run();

  GeneralizedBuchi gba;
  gba.states.resize(nodes.size());
  for (std::uint32_t q = 0; q < nodes.size(); ++q) {
    auto& s = gba.states[q];
    s.positive.assign(nodes[q].positive.begin(), nodes[q].positive.end());
    s.negative.assign(nodes[q].negative.begin(), nodes[q].negative.end());
    for (std::uint32_t from : nodes[q].incoming) {
      if (from == kInit) {
        gba.initial.push_back(q);
      } else {
        gba.states[from].successors.push_back(q);
      }
    }
  }
  for (auto& s : gba.states) std::sort(s.successors.begin(), s.successors.end());

  // One acceptance set per eventuality: states that either do not promise it
  // or fulfil it now.
  for (std::size_t id = 0; id < f.nodes.size(); ++id) {
    const FlatNode& n = f.nodes[id];
    if (n.op != Op::Until && n.op != Op::Finally) continue;
    const auto goal = static_cast<std::size_t>(n.op == Op::Until ? n.rhs : n.lhs);
    std::vector<std::uint32_t> set;
    for (std::uint32_t q = 0; q < nodes.size(); ++q) {
      if (!nodes[q].old_set.test(id) || nodes[q].old_set.test(goal)) set.push_back(q);
    }
    gba.acceptance.push_back(std::move(set));
  }
  return gba;
}

}  // namespace petrigame::ltl
