#include "petrigame/synthesis.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <unordered_set>

#include "petrigame/error.hpp"

namespace petrigame {

Analysis analyze(const NetSystem& net, const AnalysisOptions& options) {
  MarkingGraph graph = build_marking_graph(net, options.explore);
  std::vector<PlaceId> observable;
  for (PlaceId p = 0; p < net.place_count(); ++p) {
    if (net.place(p).observable) observable.push_back(p);
  }
  std::vector<Region> closure = observable_closure(net, graph, observable, options.closure);
  ExtendedNet extended = extend_net(net, graph, closure);
  MarkingGraph extended_graph = build_marking_graph(extended.net, options.explore);
  ObservationPartition partition = observation_partition(extended, extended_graph);
  GameStructure game = derive_game(extended, extended_graph, partition);
  return Analysis{net,
                  std::move(graph),
                  std::move(closure),
                  std::move(extended),
                  std::move(extended_graph),
                  std::move(partition),
                  std::move(game)};
}

namespace {

// Classes reached from the initial state when controllable moves are taken
// only at classes whose choice is fixed, in order of first reach.
std::vector<ClassId> reach(const GameStructure& game, const Strategy& f,
                           const std::vector<char>& fixed) {
  const NetSystem& net = game.net.net;
  std::vector<char> seen_state(game.state_count(), 0);
  std::vector<char> seen_class(game.class_count(), 0);
  std::vector<StateId> queue{game.initial()};
  std::vector<ClassId> order;
  seen_state[game.initial()] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const StateId s = queue[i];
    const ClassId c = game.class_of[s];
    if (!seen_class[c]) {
      seen_class[c] = 1;
      order.push_back(c);
    }
    const auto selected = fixed[c] ? f.at(c) : std::nullopt;
    for (const GameMove& mv : game.moves[s]) {
      if (net.controllable(mv.transition) && mv.transition != selected) continue;
      if (!seen_state[mv.target]) {
        seen_state[mv.target] = 1;
        queue.push_back(mv.target);
      }
    }
  }
  return order;
}

}  // namespace

CandidateEnumerator::CandidateEnumerator(const GameStructure& game)
    : game_(game), assigned_(game.class_count(), 0) {
  current_.choice.assign(game.class_count(), std::nullopt);
}

std::optional<ClassId> CandidateEnumerator::first_open_class() const {
  for (ClassId c : reach(game_, current_, assigned_)) {
    if (!assigned_[c]) return c;
  }
  return std::nullopt;
}

Strategy CandidateEnumerator::descend() {
  while (auto c = first_open_class()) {
    Frame frame{*c, {}, 0};
    for (TransitionId t : game_.class_options(*c)) frame.options.emplace_back(t);
    frame.options.emplace_back(std::nullopt);
    assigned_[*c] = 1;
    current_.choice[*c] = frame.options.front();
    stack_.push_back(std::move(frame));
  }
  return current_;
}

// Fixing a class only adds moves, so classes fixed higher on the stack stay
// reachable while deeper frames change.
std::optional<Strategy> CandidateEnumerator::next() {
  if (!started_) {
    started_ = true;
    return descend();
  }
  while (!stack_.empty()) {
    Frame& frame = stack_.back();
    if (++frame.index < frame.options.size()) {
      current_.choice[frame.cls] = frame.options[frame.index];
      return descend();
    }
    assigned_[frame.cls] = 0;
    current_.choice[frame.cls] = std::nullopt;
    stack_.pop_back();
  }
  return std::nullopt;
}

std::vector<Strategy> candidate_strategies(const GameStructure& game) {
  std::vector<Strategy> out;
  CandidateEnumerator e(game);
  while (auto s = e.next()) out.push_back(std::move(*s));
  return out;
}

double naive_candidate_count(const GameStructure& game) {
  double n = 1;
  for (ClassId c = 0; c < game.class_count(); ++c) {
    n *= static_cast<double>(game.class_options(c).size() + 1);
  }
  return n;
}

std::vector<char> reached_classes(const GameStructure& game, const Strategy& f) {
  std::vector<char> all(game.class_count(), 1), out(game.class_count(), 0);
  for (ClassId c : reach(game, f, all)) out[c] = 1;
  return out;
}

ltl::Verdict check_strategy(const GameStructure& game, const Strategy& f,
                            const ltl::Formula& goal) {
  for (const std::string& a : ltl::atoms(goal)) {
    if (!game.net.base.find_place(a)) {
      throw Error(Errc::UnknownAtom, "goal atom '" + a + "' is not a place of the net");
    }
  }
  const EncodedModel k = encode(game, f);
  return ltl::check_fair(k.model, goal, k.fairness);
}

NetStrategy to_net_strategy(const GameStructure& game, const Strategy& f) {
  const auto reached = reached_classes(game, f);
  NetStrategy out;
  for (ClassId c = 0; c < game.class_count(); ++c) {
    out.rules.push_back({game.class_observation[c], reached[c] ? f.at(c) : std::nullopt});
  }
  return out;
}

Strategy from_net_strategy(const GameStructure& game, const NetStrategy& s) {
  Strategy f;
  f.choice.assign(game.class_count(), std::nullopt);
  for (const auto& rule : s.rules) {
    std::optional<ClassId> cls;
    for (ClassId c = 0; c < game.class_count(); ++c) {
      if (game.class_observation[c] == rule.observe) cls = c;
    }
    if (!cls) {
      throw Error(Errc::UnresolvedObservation,
                  "observation " + game.net.net.format(rule.observe) + " matches no class");
    }
    if (rule.fire && !game.net.net.controllable(*rule.fire)) {
      throw Error(Errc::InvalidArgument, "strategy fires environment transition '" +
                                             game.net.net.transition(*rule.fire).name + "'");
    }
    f.choice[*cls] = rule.fire;
  }
  return f;
}

SynthesisResult synthesize(const Analysis& analysis, const ltl::Formula& goal,
                           const SynthesisOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const GameStructure& game = analysis.game;
  SynthesisResult result;
  result.stats.states = game.state_count();
  result.stats.classes = game.class_count();
  result.stats.naive_candidates = naive_candidate_count(game);

  const unsigned jobs = std::max(1u, options.jobs);
  const std::size_t batch_size = jobs == 1 ? 1 : 4 * jobs;
  CandidateEnumerator candidates(game);
  bool exhausted = false;
  while (!result.realizable && !exhausted) {
    std::vector<Strategy> batch;
    while (batch.size() < batch_size) {
      auto s = candidates.next();
      if (!s) {
        exhausted = true;
        break;
      }
      batch.push_back(std::move(*s));
    }
    std::vector<ltl::Verdict> verdicts(batch.size());
    if (jobs == 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) {
        verdicts[i] = check_strategy(game, batch[i], goal);
      }
    } else {
      std::vector<std::future<void>> workers;
      for (unsigned w = 0; w < jobs; ++w) {
        workers.push_back(std::async(std::launch::async, [&, w] {
          for (std::size_t i = w; i < batch.size(); i += jobs) {
            verdicts[i] = check_strategy(game, batch[i], goal);
          }
        }));
      }
      for (auto& w : workers) w.get();
    }
    // Scan in enumeration order so the reported winner is the same for any
    // number of workers.
    for (std::size_t i = 0; i < batch.size(); ++i) {
      ++result.stats.examined;
      if (verdicts[i].holds()) {
        result.realizable = true;
        result.net_strategy = to_net_strategy(game, batch[i]);
        result.strategy = std::move(batch[i]);
        exhausted = false;
        break;
      }
      if (result.counterexamples.size() < options.kept_counterexamples) {
        result.counterexamples.push_back({batch[i], std::move(verdicts[i])});
      }
    }
  }
  result.stats.exhausted = exhausted && !result.realizable;
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SynthesisResult synthesize(const NetSystem& net, const ltl::Formula& goal,
                           const SynthesisOptions& options) {
  for (const std::string& a : ltl::atoms(goal)) {
    if (!net.find_place(a)) {
      throw Error(Errc::UnknownAtom, "goal atom '" + a + "' is not a place of the net");
    }
  }
  return synthesize(analyze(net, options), goal, options);
}

ltl::Formula reachability_goal(const NetSystem& net, const Marking& target) {
  std::optional<ltl::Formula> body;
  auto add = [&](ltl::Formula f) {
    body = body ? ltl::Formula::conjunction(std::move(*body), std::move(f)) : std::move(f);
  };
  for (PlaceId p = 0; p < net.place_count(); ++p) {
    if (target.test(p)) add(ltl::Formula::atom(net.place(p).name));
  }
  for (PlaceId p = 0; p < net.place_count(); ++p) {
    if (!target.test(p)) add(ltl::Formula::negation(ltl::Formula::atom(net.place(p).name)));
  }
  return ltl::Formula::finally(body ? *body : ltl::Formula::truth());
}

}  // namespace petrigame
