#include <gtest/gtest.h>

#include "oracles.hpp"
#include "petrigame/error.hpp"
#include "petrigame/ltl/buchi.hpp"
#include "petrigame/ltl/check.hpp"
#include "support.hpp"

using namespace petrigame;
using namespace petrigame::ltl;

namespace {

Errc parse_error(const std::string& text) {
  try {
    parse_formula(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << text;
  return Errc::Io;
}

// Two-state chain a -> b -> b.
KripkeModel chain() {
  KripkeModel k;
  k.propositions = {"a", "b", "u"};
  k.labels = {testsupport::valuation(3, 0b101), testsupport::valuation(3, 0b110)};
  k.successors = {{1}, {1}};
  return k;
}

}  // namespace

TEST(Formula, ParsesGoalsAndPrintsThem) {
  EXPECT_EQ(parse_formula("F(p4 & p5) | F((p3 | p7) & p6)").to_string(),
            "F(p4 & p5) | F((p3 | p7) & p6)");
  EXPECT_EQ(parse_formula("F w & G !p").to_string(), "F w & G !p");
  EXPECT_EQ(parse_formula("a -> b -> c").to_string(), "a -> (b -> c)");
  EXPECT_EQ(parse_formula("a U b U c").to_string(), "a U (b U c)");
  EXPECT_EQ(parse_formula("\"p3|p7\" R true").to_string(), "\"p3|p7\" R true");
  EXPECT_EQ(parse_formula("!F a").op(), Op::Not);
  EXPECT_EQ(parse_formula("a & b | c").op(), Op::Or);
}

TEST(Formula, RejectsBadInput) {
  EXPECT_EQ(parse_error("X p1"), Errc::XNotAllowed);
  EXPECT_EQ(parse_error("F X p1"), Errc::XNotAllowed);
  EXPECT_EQ(parse_error("a &"), Errc::Syntax);
  EXPECT_EQ(parse_error("(a"), Errc::Syntax);
  EXPECT_EQ(parse_error("a b"), Errc::Syntax);
  EXPECT_EQ(parse_error("U a"), Errc::Syntax);
  EXPECT_EQ(parse_error("a $ b"), Errc::Syntax);
  EXPECT_EQ(parse_error(""), Errc::Syntax);
}

TEST(Formula, PrintParseRoundTrip) {
  std::mt19937 rng(2);
  for (int i = 0; i < 500; ++i) {
    const Formula f = testsupport::random_formula(rng, {"a", "b", "c"}, 4);
    EXPECT_EQ(parse_formula(f.to_string()), f) << f.to_string();
  }
}

TEST(Formula, NegationNormalForm) {
  const Formula f = nnf(parse_formula("!(a U (b -> G c))"));
  EXPECT_EQ(f.to_string(), "!a R (b & F !c)");
  EXPECT_EQ(atoms(parse_formula("a U (b | a)")), (std::vector<std::string>{"a", "b"}));
}

TEST(Formula, CompileSharesSubformulasAndResolvesAtoms) {
  const auto resolve = testsupport::resolver_for({"a", "b"});
  const FlatFormula f = compile(parse_formula("(a & b) | (a & b)"), resolve);
  EXPECT_EQ(f.nodes.size(), 4u);
  try {
    compile(parse_formula("F zz"), resolve);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownAtom);
  }
}

TEST(Formula, PrefixVerdicts) {
  const auto resolve = testsupport::resolver_for({"w", "p"});
  const std::vector<Valuation> not_yet = {testsupport::valuation(2, 0b00),
                                          testsupport::valuation(2, 0b00)};
  EXPECT_EQ(evaluate_on_prefix(parse_formula("F w"), resolve, not_yet), Truth::Unknown);
  const std::vector<Valuation> reached = {testsupport::valuation(2, 0b00),
                                          testsupport::valuation(2, 0b01)};
  EXPECT_EQ(evaluate_on_prefix(parse_formula("F w"), resolve, reached), Truth::True);
  const std::vector<Valuation> bad = {testsupport::valuation(2, 0b10)};
  EXPECT_EQ(evaluate_on_prefix(parse_formula("G !p"), resolve, bad), Truth::False);
  EXPECT_EQ(evaluate_on_prefix(parse_formula("G true"), resolve, bad), Truth::True);
}

TEST(Buchi, GloballyIsOneStateWithASelfLoop) {
  const auto resolve = testsupport::resolver_for({"a"});
  const GeneralizedBuchi g = to_buchi(compile(parse_formula("G a"), resolve));
  ASSERT_EQ(g.states.size(), 1u);
  EXPECT_EQ(g.states[0].positive, std::vector<PropId>{0});
  EXPECT_EQ(g.states[0].successors, std::vector<std::uint32_t>{0});
  EXPECT_TRUE(g.acceptance.empty());
}

// Language check against the semantics on every lasso with at most three
// positions over two atoms: the automaton accepts a lasso word iff some run
// exists, decided through the product with the lasso viewed as a model.
TEST(Buchi, LanguageMatchesSemanticsOnSmallLassos) {
  const std::vector<std::string> ab = {"a", "b"};
  const auto resolve = testsupport::resolver_for(ab);
  std::vector<std::string> formulas = {"F a", "a U b", "G a", "a R b", "G F a", "F G !b",
                                       "(a U b) & G !a", "F(a & F b)"};
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) formulas.push_back(testsupport::random_formula(rng, ab, 3).to_string());
  for (const auto& text : formulas) {
    const Formula f = parse_formula(text);
    for (std::size_t len = 1; len <= 3; ++len) {
      for (std::size_t loop = 0; loop < len; ++loop) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * len)); ++bits) {
          KripkeModel k;
          k.propositions = ab;
          for (std::size_t i = 0; i < len; ++i) {
            k.labels.push_back(testsupport::valuation(2, bits >> (2 * i) & 3));
            k.successors.push_back({static_cast<KState>(i + 1 < len ? i + 1 : loop)});
          }
          std::vector<Valuation> stem(k.labels.begin(), k.labels.begin() + loop);
          std::vector<Valuation> cycle(k.labels.begin() + loop, k.labels.end());
          const bool semantic = evaluate_on_lasso(compile(f, resolve), stem, cycle);
          // The single path of k satisfies f iff the negation has no run.
          EXPECT_EQ(check_fair(k, f, {}).holds(), semantic) << text << " len " << len;
        }
      }
    }
  }
}

TEST(Check, FairnessExamples) {
  const KripkeModel k = chain();
  const std::vector<PropId> fair = {2};
  EXPECT_EQ(check_fair(k, parse_formula("F b"), fair).kind, Verdict::Kind::Holds);
  const Verdict v = check_fair(k, parse_formula("G a"), fair);
  ASSERT_EQ(v.kind, Verdict::Kind::Fails);
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(v.counterexample->stem, std::vector<KState>{0});
  EXPECT_EQ(v.counterexample->cycle, std::vector<KState>{1});
  EXPECT_TRUE(exists_fair_path(k, fair));

  // The only cycle lacks u.
  const std::vector<PropId> fair_a = {0};
  EXPECT_EQ(check_fair(k, parse_formula("F b"), fair_a).kind, Verdict::Kind::Vacuous);
  EXPECT_EQ(check_fair(k, parse_formula("false"), fair_a).kind, Verdict::Kind::Vacuous);
  EXPECT_THROW(check_fair(k, parse_formula("F zz"), fair), Error);
}

TEST(Check, NoReachableCycleMeansNoFairPath) {
  KripkeModel k;
  k.propositions = {"a"};
  k.labels = {testsupport::valuation(1, 1), testsupport::valuation(1, 0)};
  k.successors = {{1}, {}};
  EXPECT_FALSE(exists_fair_path(k, {}));
}

TEST(Check, HubNeedsAWalkThatIsNotASimpleCycle) {
  // h <-> x, h <-> y; fairness demands both x and y infinitely often.
  KripkeModel k;
  k.propositions = {"x", "y"};
  k.labels = {testsupport::valuation(2, 0), testsupport::valuation(2, 1),
              testsupport::valuation(2, 2)};
  k.successors = {{1, 2}, {0}, {0}};
  const std::vector<PropId> fair = {0, 1};
  EXPECT_TRUE(exists_fair_path(k, fair));
  EXPECT_EQ(check_fair(k, parse_formula("G F x"), fair).kind, Verdict::Kind::Holds);
  const Verdict v = check_fair(k, parse_formula("F G !y"), fair);
  ASSERT_EQ(v.kind, Verdict::Kind::Fails);
  EXPECT_TRUE(testsupport::is_fair(k, *v.counterexample, fair));
}

TEST(Check, AgreesWithLassoEnumerationOnRandomModels) {
  std::mt19937 rng(13);
  const std::vector<std::string> atoms = {"a", "b", "c"};
  for (int m = 0; m < 30; ++m) {
    const auto k = testsupport::random_kripke(rng, 2 + m % 6, atoms, 2);
    std::vector<PropId> fair;
    for (PropId a = 0; a < 3; ++a) {
      if (rng() % 3 == 0) fair.push_back(a);
    }
    const testsupport::ModelCheckOracle oracle(k, fair, 6);
    for (int i = 0; i < 20; ++i) {
      const Formula f = testsupport::random_formula(rng, atoms, 3);
      const Verdict v = check_fair(k, f, fair);
      EXPECT_TRUE(oracle.agrees(f, v)) << f.to_string() << " " << to_string(v.kind);
      // Duality.
      if (v.holds()) {
        EXPECT_EQ(check_fair(k, Formula::negation(f), fair).kind, Verdict::Kind::Fails);
      }
    }
  }
}
