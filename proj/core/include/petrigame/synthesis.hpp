#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "petrigame/game.hpp"
#include "petrigame/kripke.hpp"
#include "petrigame/ltl/check.hpp"
#include "petrigame/ltl/formula.hpp"
#include "petrigame/marking_graph.hpp"
#include "petrigame/regions.hpp"
#include "petrigame/stability.hpp"
#include "petrigame/strategy.hpp"

namespace petrigame {

struct AnalysisOptions {
  ExploreOptions explore;
  ClosureOptions closure;
};

/// Every intermediate artifact of the pipeline for one net.
struct Analysis {
  NetSystem net;
  MarkingGraph graph;
  std::vector<Region> closure;
  ExtendedNet extended;
  MarkingGraph extended_graph;
  ObservationPartition partition;
  GameStructure game;
};

Analysis analyze(const NetSystem& net, const AnalysisOptions& options = {});

/// Lazy depth-first enumeration of strategies. Classes are branched on only
/// when they are reachable under the choices made so far, in order of first
/// reach; options are the class's controllable transitions in declaration
/// order, then idling. Strategies that differ only on classes they never
/// reach are produced once, with those classes left idle.
class CandidateEnumerator {
 public:
  explicit CandidateEnumerator(const GameStructure& game);
  std::optional<Strategy> next();

 private:
  struct Frame {
    ClassId cls;
    std::vector<std::optional<TransitionId>> options;
    std::size_t index = 0;
  };
  Strategy descend();
  std::optional<ClassId> first_open_class() const;

  const GameStructure& game_;
  std::vector<char> assigned_;
  Strategy current_;
  std::vector<Frame> stack_;
  bool started_ = false;
};

std::vector<Strategy> candidate_strategies(const GameStructure& game);
// Size of the unpruned search space: product over classes of (options + 1).
double naive_candidate_count(const GameStructure& game);

// Classes reached from the initial state when playing f.
std::vector<char> reached_classes(const GameStructure& game, const Strategy& f);

// Holds only if a fair play exists and every fair play satisfies the goal.
// Throws UnknownAtom for goal atoms that are not places of the base net.
ltl::Verdict check_strategy(const GameStructure& game, const Strategy& f,
                            const ltl::Formula& goal);

/// Net-level strategy over observations of Sigma'.
struct NetStrategy {
  struct Rule {
    Observation observe;
    std::optional<TransitionId> fire;
  };
  std::vector<Rule> rules;  // one per observation class, in class order
};

// Classes that f never reaches are emitted idle.
NetStrategy to_net_strategy(const GameStructure& game, const Strategy& f);
// Inverse direction for strategies read from a file. Classes without a rule
// idle. Throws UnresolvedObservation for a rule matching no class and
// InvalidArgument for a rule that selects an environment transition.
Strategy from_net_strategy(const GameStructure& game, const NetStrategy& s);

struct SynthesisOptions : AnalysisOptions {
  unsigned jobs = 1;
  std::size_t kept_counterexamples = 8;
};

struct SynthesisStats {
  std::size_t states = 0;  // |M^r|
  std::size_t classes = 0;
  std::size_t examined = 0;
  double naive_candidates = 0;
  bool exhausted = false;  // every candidate was checked
  double wall_seconds = 0;
};

struct Counterexample {
  Strategy strategy;
  ltl::Verdict verdict;
};

struct SynthesisResult {
  bool realizable = false;
  std::optional<Strategy> strategy;
  std::optional<NetStrategy> net_strategy;
  std::vector<Counterexample> counterexamples;  // first few losing candidates
  SynthesisStats stats;
};

// Runs the candidates in enumeration order and reports the first winner; the
// outcome does not depend on options.jobs.
SynthesisResult synthesize(const Analysis& analysis, const ltl::Formula& goal,
                           const SynthesisOptions& options = {});
SynthesisResult synthesize(const NetSystem& net, const ltl::Formula& goal,
                           const SynthesisOptions& options = {});

// F(p1 & ... & !q1 & ...) over every place of the net.
ltl::Formula reachability_goal(const NetSystem& net, const Marking& target);

}  // namespace petrigame
