#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace petrigame::ltl {

// No next-step operator exists: the fragment is stutter invariant.
enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Until,
  Release,
  Finally,
  Globally,
};

/// Immutable LTL formula over named atoms. Copies share structure.
class Formula {
 public:
  Formula();  // true

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula until(Formula lhs, Formula rhs);
  static Formula release(Formula lhs, Formula rhs);
  static Formula finally(Formula f);
  static Formula globally(Formula f);

  Op op() const;
  const std::string& atom_name() const;
  // Operand of unary operators is lhs().
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::string to_string() const;
  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Grammar (loosest first): a -> b (right assoc), |, &, U / R (right assoc),
// prefix ! F G, atoms, true, false, parentheses. Atoms are identifiers
// [A-Za-z_][A-Za-z0-9_]* or double-quoted strings. Throws Syntax, XNotAllowed.
Formula parse_formula(std::string_view text);

// Negation normal form: no implication, negation only on atoms.
Formula nnf(const Formula& f);

// Atom names in order of first occurrence.
std::vector<std::string> atoms(const Formula& f);

using PropId = std::uint32_t;
using Valuation = boost::dynamic_bitset<>;
using AtomResolver = std::function<std::optional<PropId>(std::string_view)>;

struct FlatNode {
  Op op;
  PropId atom = 0;
  std::int32_t lhs = -1;
  std::int32_t rhs = -1;
};

/// Formula with atoms resolved to proposition ids; children precede parents
/// and structurally equal subformulas share one node.
struct FlatFormula {
  std::vector<FlatNode> nodes;
  std::int32_t root = -1;
};

// Throws UnknownAtom when the resolver rejects an atom.
FlatFormula compile(const Formula& f, const AtomResolver& resolve);

// Exact semantics on the ultimately periodic word stem . cycle^omega.
bool evaluate_on_lasso(const FlatFormula& f, std::span<const Valuation> stem,
                       std::span<const Valuation> cycle);

enum class Truth { False, True, Unknown };

// Three-valued verdict on a finite prefix: True (False) when every infinite
// continuation satisfies (violates) the formula, Unknown when the check
// cannot decide. Sound, not complete.
Truth evaluate_on_prefix(const Formula& f, const AtomResolver& resolve,
                         std::span<const Valuation> prefix);

}  // namespace petrigame::ltl
