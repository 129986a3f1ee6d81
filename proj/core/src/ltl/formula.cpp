#include "petrigame/ltl/formula.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <tuple>

#include "petrigame/error.hpp"

namespace petrigame::ltl {

struct Formula::Node {
  Op op;
  std::string atom;
  Formula lhs;
  Formula rhs;
};

namespace {

const Formula& empty_operand() {
  static const Formula f;
  return f;
}

bool is_binary(Op op) {
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Until:
    case Op::Release:
      return true;
    default:
      return false;
  }
}

}  // namespace

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula::Formula() {
  static const auto truth_node =
      std::make_shared<const Node>(Node{Op::True, {}, Formula(nullptr), Formula(nullptr)});
  node_ = truth_node;
}

Formula Formula::truth() { return Formula(); }
Formula Formula::falsity() {
  return Formula(std::make_shared<const Node>(Node{Op::False, {}, {}, {}}));
}
Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(name), {}, {}}));
}
Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Op::Not, {}, std::move(f), {}}));
}
Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::And, {}, std::move(lhs), std::move(rhs)}));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::Or, {}, std::move(lhs), std::move(rhs)}));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Op::Implies, {}, std::move(lhs), std::move(rhs)}));
}
Formula Formula::until(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::Until, {}, std::move(lhs), std::move(rhs)}));
}
Formula Formula::release(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Op::Release, {}, std::move(lhs), std::move(rhs)}));
}
Formula Formula::finally(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Op::Finally, {}, std::move(f), {}}));
}
Formula Formula::globally(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Op::Globally, {}, std::move(f), {}}));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::atom_name() const { return node_->atom; }
const Formula& Formula::lhs() const { return node_->lhs.node_ ? node_->lhs : empty_operand(); }
const Formula& Formula::rhs() const { return node_->rhs.node_ ? node_->rhs : empty_operand(); }

std::size_t Formula::depth() const {
  switch (op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 0;
    case Op::Not:
    case Op::Finally:
    case Op::Globally:
      return 1 + lhs().depth();
    default:
      return 1 + std::max(lhs().depth(), rhs().depth());
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::True:
    case Op::False:
      return true;
    case Op::Atom:
      return a.atom_name() == b.atom_name();
    case Op::Not:
    case Op::Finally:
    case Op::Globally:
      return a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool plain_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  static const char* keywords[] = {"U", "R", "F", "G", "X", "true", "false"};
  for (const char* k : keywords) {
    if (s == k) return false;
  }
  return true;
}

const char* binary_symbol(Op op) {
  switch (op) {
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Implies: return " -> ";
    case Op::Until: return " U ";
    case Op::Release: return " R ";
    default: return "";
  }
}

void print(std::ostream& os, const Formula& f);

void print_operand(std::ostream& os, const Formula& f) {
  if (is_binary(f.op())) {
    os << '(';
    print(os, f);
    os << ')';
  } else {
    print(os, f);
  }
}

// Flattens the left spine of a chain, a & b & c, which is how the parser
// associates it; a right operand with the same operator keeps its parentheses.
void print_chain(std::ostream& os, const Formula& f, Op op) {
  if (f.op() == op) {
    print_chain(os, f.lhs(), op);
    os << binary_symbol(op);
    print_operand(os, f.rhs());
  } else {
    print_operand(os, f);
  }
}

void print(std::ostream& os, const Formula& f) {
  switch (f.op()) {
    case Op::True: os << "true"; return;
    case Op::False: os << "false"; return;
    case Op::Atom:
      if (plain_identifier(f.atom_name())) {
        os << f.atom_name();
      } else {
        os << '"' << f.atom_name() << '"';
      }
      return;
    case Op::Not:
      os << '!';
      print_operand(os, f.lhs());
      return;
    case Op::Finally:
    case Op::Globally:
      os << (f.op() == Op::Finally ? "F" : "G");
      if (!is_binary(f.lhs().op())) os << ' ';
      print_operand(os, f.lhs());
      return;
    case Op::And:
    case Op::Or:
      print_chain(os, f, f.op());
      return;
    default:
      print_operand(os, f.lhs());
      os << binary_symbol(f.op());
      print_operand(os, f.rhs());
      return;
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::ostringstream os;
  print(os, *this);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Quoted, Not, And, Or, Arrow, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == '"') {
      const auto close = s.find('"', i + 1);
      if (close == std::string_view::npos) {
        throw Error(Errc::Syntax, "unterminated quoted atom at offset " + std::to_string(i));
      }
      out.push_back({Tok::Quoted, std::string(s.substr(i + 1, close - i - 1)), start});
      i = close + 1;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", start});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '!': kind = Tok::Not; break;
      case '&': kind = Tok::And; break;
      case '|': kind = Tok::Or; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw Error(Errc::Syntax, std::string("unexpected character '") + c + "' at offset " +
                                      std::to_string(i));
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool keyword(std::string_view k) const {
    return peek().kind == Tok::Ident && peek().text == k;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::Syntax, what + " at offset " + std::to_string(peek().pos));
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      return Formula::implication(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Or) {
      ++pos_;
      f = Formula::disjunction(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = temporal();
    while (peek().kind == Tok::And) {
      ++pos_;
      f = Formula::conjunction(std::move(f), temporal());
    }
    return f;
  }

  Formula temporal() {
    Formula lhs = unary();
    if (keyword("U")) {
      ++pos_;
      return Formula::until(std::move(lhs), temporal());
    }
    if (keyword("R")) {
      ++pos_;
      return Formula::release(std::move(lhs), temporal());
    }
    return lhs;
  }

  Formula unary() {
    if (peek().kind == Tok::Not) {
      ++pos_;
      return Formula::negation(unary());
    }
    if (keyword("X")) {
      throw Error(Errc::XNotAllowed, "the next-step operator X is not allowed (offset " +
                                         std::to_string(peek().pos) + ")");
    }
    if (keyword("F")) {
      ++pos_;
      return Formula::finally(unary());
    }
    if (keyword("G")) {
      ++pos_;
      return Formula::globally(unary());
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        ++pos_;
        Formula f = implication();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        ++pos_;
        return f;
      }
      case Tok::Quoted:
        ++pos_;
        return Formula::atom(t.text);
      case Tok::Ident:
        if (t.text == "true") {
          ++pos_;
          return Formula::truth();
        }
        if (t.text == "false") {
          ++pos_;
          return Formula::falsity();
        }
        if (t.text == "U" || t.text == "R") fail("missing left operand of '" + t.text + "'");
        ++pos_;
        return Formula::atom(t.text);
      case Tok::End:
        fail("unexpected end of formula");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------

namespace {

Formula nnf_impl(const Formula& f, bool negated) {
  switch (f.op()) {
    case Op::True:
      return negated ? Formula::falsity() : f;
    case Op::False:
      return negated ? Formula::truth() : f;
    case Op::Atom:
      return negated ? Formula::negation(f) : f;
    case Op::Not:
      return nnf_impl(f.lhs(), !negated);
    case Op::And:
      return negated ? Formula::disjunction(nnf_impl(f.lhs(), true), nnf_impl(f.rhs(), true))
                     : Formula::conjunction(nnf_impl(f.lhs(), false), nnf_impl(f.rhs(), false));
    case Op::Or:
      return negated ? Formula::conjunction(nnf_impl(f.lhs(), true), nnf_impl(f.rhs(), true))
                     : Formula::disjunction(nnf_impl(f.lhs(), false), nnf_impl(f.rhs(), false));
    case Op::Implies:
      return negated ? Formula::conjunction(nnf_impl(f.lhs(), false), nnf_impl(f.rhs(), true))
                     : Formula::disjunction(nnf_impl(f.lhs(), true), nnf_impl(f.rhs(), false));
    case Op::Until:
      return negated ? Formula::release(nnf_impl(f.lhs(), true), nnf_impl(f.rhs(), true))
                     : Formula::until(nnf_impl(f.lhs(), false), nnf_impl(f.rhs(), false));
    case Op::Release:
      return negated ? Formula::until(nnf_impl(f.lhs(), true), nnf_impl(f.rhs(), true))
                     : Formula::release(nnf_impl(f.lhs(), false), nnf_impl(f.rhs(), false));
    case Op::Finally:
      return negated ? Formula::globally(nnf_impl(f.lhs(), true))
                     : Formula::finally(nnf_impl(f.lhs(), false));
    case Op::Globally:
      return negated ? Formula::finally(nnf_impl(f.lhs(), true))
                     : Formula::globally(nnf_impl(f.lhs(), false));
  }
  return f;
}

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return;
    case Op::Atom:
      if (std::find(out.begin(), out.end(), f.atom_name()) == out.end()) out.push_back(f.atom_name());
      return;
    case Op::Not:
    case Op::Finally:
    case Op::Globally:
      collect_atoms(f.lhs(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_impl(f, false); }

std::vector<std::string> atoms(const Formula& f) {
  std::vector<std::string> out;
  collect_atoms(f, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Compiler {
  const AtomResolver& resolve;
  FlatFormula out;
  std::map<std::tuple<Op, PropId, std::int32_t, std::int32_t>, std::int32_t> shared;

  std::int32_t intern(FlatNode n) {
    auto key = std::make_tuple(n.op, n.atom, n.lhs, n.rhs);
    auto it = shared.find(key);
    if (it != shared.end()) return it->second;
    const auto id = static_cast<std::int32_t>(out.nodes.size());
    out.nodes.push_back(n);
    shared.emplace(key, id);
    return id;
  }

  std::int32_t visit(const Formula& f) {
    switch (f.op()) {
      case Op::True:
      case Op::False:
        return intern({f.op(), 0, -1, -1});
      case Op::Atom: {
        auto id = resolve(f.atom_name());
        if (!id) throw Error(Errc::UnknownAtom, "unknown atom '" + f.atom_name() + "'");
        return intern({Op::Atom, *id, -1, -1});
      }
      case Op::Not:
      case Op::Finally:
      case Op::Globally: {
        const auto child = visit(f.lhs());
        return intern({f.op(), 0, child, -1});
      }
      default: {
        const auto l = visit(f.lhs());
        const auto r = visit(f.rhs());
        return intern({f.op(), 0, l, r});
      }
    }
  }
};

// Values of every node at every position of a lasso whose last position loops
// back to `loop_start`. When `free_last` is set, literals at the last
// position evaluate to `free_value` regardless of the valuation (used for the
// bounding tails of prefix evaluation, on NNF input only).
std::vector<std::vector<char>> evaluate_all(const FlatFormula& f, std::span<const Valuation> word,
                                            std::size_t loop_start, bool free_last,
                                            bool free_value) {
  const std::size_t n = word.size();
  auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : loop_start; };
  auto atom_at = [&](std::size_t i, PropId a) {
    return a < word[i].size() && word[i].test(a);
  };

  std::vector<std::vector<char>> val(f.nodes.size(), std::vector<char>(n, 0));
  for (std::size_t id = 0; id < f.nodes.size(); ++id) {
    const FlatNode& node = f.nodes[id];
    auto& v = val[id];
    const bool tail_literal = free_last && (node.op == Op::Atom ||
                                            (node.op == Op::Not && f.nodes[node.lhs].op == Op::Atom));
    switch (node.op) {
      case Op::True:
        std::fill(v.begin(), v.end(), 1);
        break;
      case Op::False:
        break;
      case Op::Atom:
        for (std::size_t i = 0; i < n; ++i) v[i] = atom_at(i, node.atom);
        break;
      case Op::Not:
        for (std::size_t i = 0; i < n; ++i) v[i] = !val[node.lhs][i];
        break;
      case Op::And:
        for (std::size_t i = 0; i < n; ++i) v[i] = val[node.lhs][i] && val[node.rhs][i];
        break;
      case Op::Or:
        for (std::size_t i = 0; i < n; ++i) v[i] = val[node.lhs][i] || val[node.rhs][i];
        break;
      case Op::Implies:
        for (std::size_t i = 0; i < n; ++i) v[i] = !val[node.lhs][i] || val[node.rhs][i];
        break;
      case Op::Until:
      case Op::Finally:
      case Op::Release:
      case Op::Globally: {
        const bool least = node.op == Op::Until || node.op == Op::Finally;
        const bool unary = node.op == Op::Finally || node.op == Op::Globally;
        auto guard = [&](std::size_t i) -> bool {
          if (unary) return node.op == Op::Globally ? false : true;
          return val[node.lhs][i];
        };
        const auto& goal = val[unary ? node.lhs : node.rhs];
        std::fill(v.begin(), v.end(), least ? 0 : 1);
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t k = n; k-- > 0;) {
            const bool next = v[succ(k)];
            const bool nv = least ? (goal[k] || (guard(k) && next))
                                  : (goal[k] && (guard(k) || next));
            if (nv != static_cast<bool>(v[k])) {
              v[k] = nv;
              changed = true;
            }
          }
        }
        break;
      }
    }
    if (tail_literal) v[n - 1] = free_value;
  }
  return val;
}

}  // namespace

FlatFormula compile(const Formula& f, const AtomResolver& resolve) {
  Compiler c{resolve, {}, {}};
  c.out.root = c.visit(f);
  return std::move(c.out);
}

bool evaluate_on_lasso(const FlatFormula& f, std::span<const Valuation> stem,
                       std::span<const Valuation> cycle) {
  if (cycle.empty()) throw Error(Errc::InvalidArgument, "lasso cycle must not be empty");
  std::vector<Valuation> word(stem.begin(), stem.end());
  word.insert(word.end(), cycle.begin(), cycle.end());
  return evaluate_all(f, word, stem.size(), false, false)[f.root][0];
}

Truth evaluate_on_prefix(const Formula& f, const AtomResolver& resolve,
                         std::span<const Valuation> prefix) {
  // Every continuation lies between the tails where all unknown literals are
  // false and where all are true; NNF makes the semantics monotone in them.
  const FlatFormula flat = compile(nnf(f), resolve);
  std::vector<Valuation> word(prefix.begin(), prefix.end());
  word.emplace_back();
  const std::size_t tail = word.size() - 1;
  if (evaluate_all(flat, word, tail, true, false)[flat.root][0]) return Truth::True;
  if (!evaluate_all(flat, word, tail, true, true)[flat.root][0]) return Truth::False;
  return Truth::Unknown;
}

}  // namespace petrigame::ltl
