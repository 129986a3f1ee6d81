#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "petrigame/synthesis.hpp"

using namespace petrigame;

namespace {

NetSystem load(const std::string& name) {
  std::ifstream in(std::string(PETRIGAME_FIXTURES) + "/" + name + ".json");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_net(ss.str());
}

// n independent toggles; 2^n reachable markings.
NetSystem toggles(PlaceId n) {
  std::vector<Place> places;
  std::vector<Transition> ts;
  std::vector<PlaceId> init;
  for (PlaceId i = 0; i < n; ++i) {
    places.push_back({"on" + std::to_string(i), true, false});
    places.push_back({"off" + std::to_string(i), true, false});
    ts.push_back({"set" + std::to_string(i), {2 * i + 1}, {2 * i}, true});
    ts.push_back({"reset" + std::to_string(i), {2 * i}, {2 * i + 1}, false});
    init.push_back(2 * i + 1);
  }
  return NetSystem(places, ts, init);
}

constexpr const char* kGoal = "F(p5 & p7) | F(p6 & p7) | F(p4 & p5)";

void BM_MarkingGraph(benchmark::State& state) {
  const NetSystem net = toggles(static_cast<PlaceId>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_marking_graph(net));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MarkingGraph)->DenseRange(4, 12, 4);

void BM_Closure(benchmark::State& state) {
  const NetSystem net = load("sat");
  const MarkingGraph mg = build_marking_graph(net);
  std::vector<PlaceId> obs;
  for (PlaceId p = 0; p < net.place_count(); ++p) obs.push_back(p);
  for (auto _ : state) benchmark::DoNotOptimize(observable_closure(net, mg, obs));
}
BENCHMARK(BM_Closure);

void BM_SynthesizeSat(benchmark::State& state) {
  const NetSystem net = load("sat");
  const auto goal = ltl::parse_formula(kGoal);
  SynthesisOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(net, goal, opts));
}
BENCHMARK(BM_SynthesizeSat)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CheckFair(benchmark::State& state) {
  const Analysis a = analyze(load("sat"));
  const auto goal = ltl::parse_formula(kGoal);
  const SynthesisResult r = synthesize(a, goal);
  for (auto _ : state) benchmark::DoNotOptimize(check_strategy(a.game, *r.strategy, goal));
}
BENCHMARK(BM_CheckFair);

}  // namespace
BENCHMARK_MAIN();
