#include "petrigame/play_oracle.hpp"

#include <unordered_map>

#include "petrigame/error.hpp"

namespace petrigame {

const char* to_string(PlayTrace::Status status) {
  switch (status) {
    case PlayTrace::Status::Deadlocked: return "deadlocked";
    case PlayTrace::Status::Quiescent: return "quiescent";
    case PlayTrace::Status::Truncated: return "truncated";
  }
  return "?";
}

const char* to_string(TraceVerdict v) {
  switch (v) {
    case TraceVerdict::Sat: return "Sat";
    case TraceVerdict::Viol: return "Viol";
    case TraceVerdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

// Works on the net directly; the game is consulted only for the numbering of
// observation classes, so the oracle does not reuse its moves or pruning.
class TraceEnumerator {
 public:
  TraceEnumerator(const ExtendedNet& ext, const GameStructure& game, const Strategy& f,
                  std::size_t bound)
      : ext_(ext), f_(f), bound_(bound) {
    for (ClassId c = 0; c < game.class_count(); ++c) class_of_.emplace(game.class_observation[c], c);
  }

  std::vector<PlayTrace> run() {
    PlayTrace t;
    t.markings.push_back(ext_.net.initial());
    extend(t);
    return std::move(out_);
  }

 private:
  std::vector<TransitionId> moves(const Marking& m) {
    const NetSystem& net = ext_.net;
    std::vector<TransitionId> out;
    for (TransitionId t : net.environment_transitions()) {
      if (is_enabled(net, m, t)) out.push_back(t);
    }
    auto it = class_of_.find(observation(ext_, m));
    if (it == class_of_.end()) {
      throw Error(Errc::UnresolvedObservation,
                  "marking " + net.format(m) + " has an observation outside the game");
    }
    if (auto t = f_.at(it->second)) {
      if (!is_enabled(net, m, *t)) {
        throw Error(Errc::StrategySelectsDisabled,
                    "strategy selects '" + net.transition(*t).name + "' which " + net.format(m) +
                        " cannot fire");
      }
      out.push_back(*t);
    }
    return out;
  }

  void extend(PlayTrace& trace) {
    const Marking m = trace.markings.back();
    const auto next = moves(m);
    if (next.empty()) {
      trace.status = enabled_at(ext_.net, m).empty() ? PlayTrace::Status::Deadlocked
                                                      : PlayTrace::Status::Quiescent;
      out_.push_back(trace);
      return;
    }
    if (trace.fired.size() == bound_) {
      trace.status = PlayTrace::Status::Truncated;
      out_.push_back(trace);
      return;
    }
    for (TransitionId t : next) {
      trace.markings.push_back(fire(ext_.net, m, t));
      trace.fired.push_back(t);
      trace.controllable.push_back(ext_.net.controllable(t));
      extend(trace);
      trace.markings.pop_back();
      trace.fired.pop_back();
      trace.controllable.pop_back();
    }
  }

  const ExtendedNet& ext_;
  const Strategy& f_;
  std::size_t bound_;
  std::unordered_map<Observation, ClassId> class_of_;
  std::vector<PlayTrace> out_;
};

}  // namespace

std::vector<PlayTrace> fair_maximal_traces(const ExtendedNet& ext, const GameStructure& game,
                                           const Strategy& f, std::size_t bound) {
  if (bound == 0) throw Error(Errc::InvalidArgument, "trace bound must be positive");
  return TraceEnumerator(ext, game, f, bound).run();
}

TraceVerdict verdict_on_trace(const ExtendedNet& ext, const PlayTrace& trace,
                              const ltl::Formula& goal) {
  const NetSystem& base = ext.base;
  auto resolve = [&](std::string_view a) -> std::optional<ltl::PropId> {
    auto p = base.find_place(a);
    if (!p) return std::nullopt;
    return static_cast<ltl::PropId>(*p);
  };
  std::vector<ltl::Valuation> word;
  for (const Marking& m : trace.markings) word.push_back(ext.project(m));

  if (trace.status == PlayTrace::Status::Truncated) {
    switch (ltl::evaluate_on_prefix(goal, resolve, word)) {
      case ltl::Truth::True: return TraceVerdict::Sat;
      case ltl::Truth::False: return TraceVerdict::Viol;
      case ltl::Truth::Unknown: return TraceVerdict::Unknown;
    }
  }
  const ltl::FlatFormula flat = ltl::compile(goal, resolve);
  const std::span<const ltl::Valuation> all(word);
  return ltl::evaluate_on_lasso(flat, all.first(all.size() - 1), all.last(1)) ? TraceVerdict::Sat
                                                                           : TraceVerdict::Viol;
}

}  // namespace petrigame
