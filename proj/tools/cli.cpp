#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "petrigame/error.hpp"
#include "petrigame/io.hpp"
#include "petrigame/synthesis.hpp"

namespace petrigame::cli {

namespace {

constexpr const char* kGrammar =
    "Goal grammar, loosest first: a -> b | a | b | a & b | a U b, a R b |\n"
    "!a, F a, G a | place names, \"quoted names\", true, false, ( ).\n"
    "The next-step operator X is not part of the logic.";

struct RunConfig {
  std::string net_path;
  std::string goal;
  std::string strategy_path;
  std::size_t state_cap = ExploreOptions{}.state_cap;
  std::size_t closure_cap = ClosureOptions{}.region_cap;
  std::size_t bound = 64;
  unsigned jobs = 1;
  bool json = false;
  // explain
  bool dot_mg = false;
  bool regions = false;
  bool stable = false;
  bool game = false;
  bool dot_game = false;
  bool kripke = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SynthesisOptions options_of(const RunConfig& c) {
  SynthesisOptions o;
  o.explore.state_cap = c.state_cap;
  o.closure.region_cap = c.closure_cap;
  o.jobs = c.jobs;
  return o;
}

Analysis load(const RunConfig& c) {
  return analyze(parse_net(read_file(c.net_path)), options_of(c));
}

ltl::Formula load_goal(const RunConfig& c, const NetSystem& net) {
  ltl::Formula goal = ltl::parse_formula(c.goal);
  for (const auto& a : ltl::atoms(goal)) {
    if (!net.find_place(a)) {
      throw Error(Errc::UnknownAtom, "goal atom '" + a + "' is not a place of the net");
    }
  }
  return goal;
}

Strategy load_strategy(const RunConfig& c, const GameStructure& game) {
  return from_net_strategy(game, parse_strategy(game, read_file(c.strategy_path)));
}

void print_lasso(std::ostream& out, const EncodedModel& k, const GameStructure& game,
                 const ltl::Lasso& lasso) {
  const NetSystem& net = game.net.net;
  auto show = [&](ltl::KState s) {
    const KripkeOrigin& o = k.origin[s];
    switch (o.kind) {
      case KripkeOrigin::Kind::GameState:
        out << "    " << net.format(game.states[o.state]) << "\n";
        break;
      case KripkeOrigin::Kind::Intermediate:
        out << "      --" << net.transition(*o.transition).name << "-->\n";
        break;
      case KripkeOrigin::Kind::DeadlockPartner:
        out << "      (idle)\n";
        break;
    }
  };
  out << "  stem:\n";
  for (auto s : lasso.stem) show(s);
  out << "  cycle:\n";
  for (auto s : lasso.cycle) show(s);
}

int cmd_synthesize(const RunConfig& c, std::ostream& out) {
  const Analysis a = load(c);
  const ltl::Formula goal = load_goal(c, a.net);
  const SynthesisResult r = synthesize(a, goal, options_of(c));
  out << synthesis_json(a, r) << "\n";
  return r.realizable ? kSuccess : kNegative;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  const Analysis a = load(c);
  const ltl::Formula goal = load_goal(c, a.net);
  const Strategy f = load_strategy(c, a.game);
  const EncodedModel k = encode(a.game, f);
  const ltl::Verdict v = check_strategy(a.game, f, goal);
  if (c.json) {
    out << verdict_json(k, a.game, v) << "\n";
  } else {
    out << ltl::to_string(v.kind) << "\n";
    if (v.counterexample) print_lasso(out, k, a.game, *v.counterexample);
  }
  return v.holds() ? kSuccess : kNegative;
}

int cmd_explain(const RunConfig& c, std::ostream& out) {
  const Analysis a = load(c);
  bool any = false;
  auto emit = [&](bool wanted, auto&& produce) {
    if (!wanted) return;
    out << produce() << "\n";
    any = true;
  };
  emit(c.dot_mg, [&] { return marking_graph_dot(a.net, a.graph); });
  emit(c.regions, [&] { return regions_json(a); });
  emit(c.stable, [&] { return stable_json(a); });
  emit(c.game, [&] { return game_json(a.game); });
  emit(c.dot_game, [&] { return game_dot(a.game); });
  if (c.kripke) {
    if (c.strategy_path.empty()) throw Error(Errc::InvalidArgument, "--kripke needs --strategy");
    emit(true, [&] { return kripke_dot(encode(a.game, load_strategy(c, a.game))); });
  }
  if (!any) throw Error(Errc::InvalidArgument, "nothing to explain; pick at least one flag");
  return kSuccess;
}

int cmd_encode(const RunConfig& c, std::ostream& out) {
  const Analysis a = load(c);
  out << kripke_dot(encode(a.game, load_strategy(c, a.game)));
  return kSuccess;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
  const Analysis a = load(c);
  const ltl::Formula goal = load_goal(c, a.net);
  const Strategy f = load_strategy(c, a.game);
  const ltl::Verdict v = check_strategy(a.game, f, goal);
  const auto traces = fair_maximal_traces(a.extended, a.game, f, c.bound);
  std::vector<TraceVerdict> verdicts;
  std::size_t sat = 0, viol = 0, unknown = 0;
  for (const auto& t : traces) {
    verdicts.push_back(verdict_on_trace(a.extended, t, goal));
    switch (verdicts.back()) {
      case TraceVerdict::Sat: ++sat; break;
      case TraceVerdict::Viol: ++viol; break;
      case TraceVerdict::Unknown: ++unknown; break;
    }
  }
  // Traces can refute a winning claim; they confirm it only when none is
  // left undecided.
  const bool holds = v.holds();
  const char* agreement = viol > 0 ? (holds ? "disagree" : "agree")
                          : unknown > 0 ? "undetermined"
                          : (holds ? "agree" : "disagree");
  if (c.json) {
    nlohmann::ordered_json doc{{"check", ltl::to_string(v.kind)},
                               {"traces", traces.size()},
                               {"sat", sat},
                               {"viol", viol},
                               {"unknown", unknown},
                               {"agreement", agreement},
                               {"detail", nlohmann::json::parse(
                                              traces_json(a.extended, traces, verdicts))}};
    out << doc.dump(2) << "\n";
  } else {
    out << "check: " << ltl::to_string(v.kind) << "\n"
        << "traces: " << traces.size() << " (sat " << sat << ", viol " << viol << ", unknown "
        << unknown << ")\n"
        << "agreement: " << agreement << "\n";
  }
  return std::string_view(agreement) == "agree" ? kSuccess : kNegative;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Controller synthesis for 1-safe Petri net games with partial observability"};
  app.require_subcommand(1);
  app.footer(kGrammar);

  auto positive = CLI::PositiveNumber;
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--state-cap", c.state_cap, "Maximum number of markings explored")
        ->check(positive);
    sub->add_option("--closure-cap", c.closure_cap, "Maximum number of closure regions")
        ->check(positive);
  };
  auto add_net = [&](CLI::App* sub) {
    sub->add_option("--net", c.net_path, "Net document (JSON)")->required();
  };
  auto add_goal = [&](CLI::App* sub) {
    sub->add_option("--goal", c.goal, "LTL goal over place names")->required();
  };
  auto add_strategy = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--strategy", c.strategy_path, "Strategy document (JSON)");
    if (required) o->required();
  };

  auto* syn = app.add_subcommand("synthesize", "Search for a winning strategy");
  add_net(syn);
  add_goal(syn);
  add_caps(syn);
  syn->add_option("--jobs", c.jobs, "Worker threads for strategy checking")->check(positive);
  syn->add_flag("--json", c.json, "JSON output (the default for this command)");

  auto* chk = app.add_subcommand("check", "Check whether a given strategy is winning");
  add_net(chk);
  add_goal(chk);
  add_strategy(chk, true);
  add_caps(chk);
  chk->add_flag("--json", c.json, "JSON output");

  auto* exp = app.add_subcommand("explain", "Dump intermediate artifacts");
  add_net(exp);
  add_caps(exp);
  add_strategy(exp, false);
  exp->add_flag("--dot-mg", c.dot_mg, "Marking graph as DOT");
  exp->add_flag("--regions", c.regions, "Observable region closure as JSON");
  exp->add_flag("--stable", c.stable, "Stable parts and observations as JSON");
  exp->add_flag("--game", c.game, "Game structure as JSON");
  exp->add_flag("--dot-game", c.dot_game, "Game structure as DOT");
  exp->add_flag("--kripke", c.kripke, "Kripke encoding of --strategy as DOT");

  auto* enc = app.add_subcommand("encode", "Kripke encoding of a strategy as DOT");
  add_net(enc);
  add_strategy(enc, true);
  add_caps(enc);
  enc->add_flag("--dot", "DOT output (the only format)");

  auto* orc = app.add_subcommand("oracle", "Compare the model checker with trace enumeration");
  add_net(orc);
  add_goal(orc);
  add_strategy(orc, true);
  add_caps(orc);
  orc->add_option("--bound", c.bound, "Maximum trace length")->check(positive);
  orc->add_flag("--json", c.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kError;
  }

  try {
    if (syn->parsed()) return cmd_synthesize(c, out);
    if (chk->parsed()) return cmd_check(c, out);
    if (exp->parsed()) return cmd_explain(c, out);
    if (enc->parsed()) return cmd_encode(c, out);
    if (orc->parsed()) return cmd_oracle(c, out);
  } catch (const Error& e) {
    err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace petrigame::cli
