#include "petrigame/io.hpp"

#include <sstream>

#include <json.hpp>

#include "petrigame/error.hpp"

namespace petrigame {

using json = nlohmann::ordered_json;

namespace {

json names(const NetSystem& net, const Marking& m) { return net.names_of(m); }

json transition_names(const NetSystem& net, const std::vector<TransitionId>& ts) {
  json out = json::array();
  for (TransitionId t : ts) out.push_back(net.transition(t).name);
  return out;
}

json fire_value(const NetSystem& net, const std::optional<TransitionId>& t) {
  return t ? json(net.transition(*t).name) : json(nullptr);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

json strategy_doc(const GameStructure& game, const NetStrategy& s) {
  const NetSystem& net = game.net.net;
  json rules = json::array();
  for (const auto& r : s.rules) {
    rules.push_back({{"observe", names(net, r.observe)}, {"fire", fire_value(net, r.fire)}});
  }
  return json{{"observations", std::move(rules)}};
}

json lasso_doc(const EncodedModel& k, const GameStructure& game, const ltl::Lasso& lasso) {
  const NetSystem& net = game.net.net;
  auto step = [&](ltl::KState s) {
    const KripkeOrigin& o = k.origin[s];
    json j{{"kripke_state", s}, {"marking", names(net, game.states[o.state])}};
    switch (o.kind) {
      case KripkeOrigin::Kind::GameState:
        j["kind"] = "state";
        break;
      case KripkeOrigin::Kind::Intermediate:
        j["kind"] = "move";
        j["transition"] = net.transition(*o.transition).name;
        j["target"] = names(net, game.states[o.target]);
        break;
      case KripkeOrigin::Kind::DeadlockPartner:
        j["kind"] = "idle";
        break;
    }
    return j;
  };
  json stem = json::array(), cycle = json::array();
  for (auto s : lasso.stem) stem.push_back(step(s));
  for (auto s : lasso.cycle) cycle.push_back(step(s));
  return json{{"stem", std::move(stem)}, {"cycle", std::move(cycle)}};
}

}  // namespace

std::string write_strategy(const GameStructure& game, const NetStrategy& s) {
  return strategy_doc(game, s).dump(2);
}

NetStrategy parse_strategy(const GameStructure& game, std::string_view text) {
  const NetSystem& net = game.net.net;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Syntax, std::string("strategy document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("observations") || !doc.at("observations").is_array()) {
    throw Error(Errc::Syntax, "strategy document needs an 'observations' array");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "observations") throw Error(Errc::UnknownKey, "unknown key '" + key + "'");
  }
  NetStrategy out;
  for (const auto& rule : doc.at("observations")) {
    if (!rule.is_object() || !rule.contains("observe") || !rule.at("observe").is_array() ||
        !rule.contains("fire")) {
      throw Error(Errc::Syntax, "each observation needs 'observe' and 'fire'");
    }
    for (const auto& [key, value] : rule.items()) {
      if (key != "observe" && key != "fire") {
        throw Error(Errc::UnknownKey, "unknown key '" + key + "'");
      }
    }
    NetStrategy::Rule r{net.empty_marking(), std::nullopt};
    for (const auto& p : rule.at("observe")) {
      if (!p.is_string()) throw Error(Errc::Syntax, "'observe' must list place names");
      auto id = net.find_place(p.get<std::string>());
      if (!id) throw Error(Errc::UnknownPlace, "unknown place '" + p.get<std::string>() + "'");
      r.observe.set(*id);
    }
    const auto& fire = rule.at("fire");
    if (fire.is_string()) {
      auto t = net.find_transition(fire.get<std::string>());
      if (!t) {
        throw Error(Errc::UnknownTransition,
                    "unknown transition '" + fire.get<std::string>() + "'");
      }
      r.fire = *t;
    } else if (!fire.is_null()) {
      throw Error(Errc::Syntax, "'fire' must be a transition name or null");
    }
    out.rules.push_back(std::move(r));
  }
  return out;
}

std::string regions_json(const Analysis& a) {
  const NetSystem& net = a.net;
  json regions = json::array();
  for (std::size_t i = 0; i < a.closure.size(); ++i) {
    const Region& r = a.closure[i];
    const RegionBoundary b = region_boundary(a.graph, r.states);
    json states = json::array();
    for (StateId s = 0; s < a.graph.state_count(); ++s) {
      if (r.states.test(s)) states.push_back(names(net, a.graph.marking(s)));
    }
    json j{{"name", r.name}};
    switch (r.origin.kind) {
      case RegionOrigin::Kind::Place: j["origin"] = "place"; break;
      case RegionOrigin::Kind::Complement: j["origin"] = "complement"; break;
      case RegionOrigin::Kind::Union: j["origin"] = "union"; break;
    }
    j["states"] = std::move(states);
    j["entering"] = transition_names(net, b.entering);
    j["exiting"] = transition_names(net, b.exiting);
    regions.push_back(std::move(j));
  }
  json implicit = json::array();
  for (std::size_t i = 0; i < a.extended.implicit_regions.size(); ++i) {
    implicit.push_back(a.extended.net.place(a.extended.base_place_count() + i).name);
  }
  json observable = json::array();
  for (const Place& p : a.extended.net.places()) {
    if (p.observable) observable.push_back(p.name);
  }
  return json{{"regions", std::move(regions)},
              {"implicit_places", std::move(implicit)},
              {"observable_places", std::move(observable)}}
      .dump(2);
}

std::string stable_json(const Analysis& a) {
  const NetSystem& net = a.extended.net;
  const ObservationPartition& p = a.partition;
  json rows = json::array();
  for (StateId s = 0; s < a.extended_graph.state_count(); ++s) {
    rows.push_back({{"state", s},
                    {"marking", names(net, a.extended_graph.marking(s))},
                    {"stable", names(net, p.stable[s])},
                    {"observation", names(net, p.observation[s])},
                    {"class", p.class_of[s]}});
  }
  return json{{"states", std::move(rows)}}.dump(2);
}

std::string game_json(const GameStructure& game) {
  const NetSystem& net = game.net.net;
  json states = json::array();
  for (StateId s = 0; s < game.state_count(); ++s) {
    json moves = json::array();
    for (const GameMove& mv : game.moves[s]) {
      moves.push_back({{"transition", net.transition(mv.transition).name},
                       {"target", mv.target},
                       {"controllable", net.controllable(mv.transition)}});
    }
    json sharps = json::object();
    for (TransitionId t : net.environment_transitions()) {
      sharps[net.transition(t).name] = transition_names(net, sharp(game, t, s));
    }
    json env = transition_names(net, game.env_moves(s));
    if (env.empty()) env.push_back("eps");
    json user = transition_names(net, game.user_moves(s));
    user.push_back("eps");
    states.push_back({{"id", s},
                      {"marking", names(net, game.states[s])},
                      {"stable", names(net, game.stable[s])},
                      {"observation", names(net, game.observation[s])},
                      {"class", game.class_of[s]},
                      {"d_u", std::move(user)},
                      {"d_env", std::move(env)},
                      {"moves", std::move(moves)},
                      {"sharp", std::move(sharps)}});
  }
  json classes = json::array();
  for (ClassId c = 0; c < game.class_count(); ++c) {
    classes.push_back({{"id", c},
                       {"observation", names(net, game.class_observation[c])},
                       {"options", transition_names(net, game.class_options(c))}});
  }
  json pruned = json::array();
  for (const PrunedEdge& e : game.pruned) {
    pruned.push_back({{"source", names(net, e.source)},
                      {"transition", net.transition(e.transition).name},
                      {"target", names(net, e.target)}});
  }
  return json{{"states", std::move(states)},
              {"classes", std::move(classes)},
              {"pruned", std::move(pruned)},
              {"fairness", transition_names(net, game.fairness.environment)}}
      .dump(2);
}

std::string synthesis_json(const Analysis& a, const SynthesisResult& r) {
  const GameStructure& game = a.game;
  json doc{{"result", r.realizable ? "Realizable" : "Unrealizable"}};
  if (r.net_strategy) doc["strategy"] = strategy_doc(game, *r.net_strategy);
  if (!r.realizable) {
    json losing = json::array();
    for (const auto& c : r.counterexamples) {
      json j{{"strategy", strategy_doc(game, to_net_strategy(game, c.strategy))},
             {"verdict", ltl::to_string(c.verdict.kind)}};
      if (c.verdict.counterexample) {
        j["lasso"] = lasso_doc(encode(game, c.strategy), game, *c.verdict.counterexample);
      }
      losing.push_back(std::move(j));
    }
    doc["counterexamples"] = std::move(losing);
  }
  doc["stats"] = {{"states", r.stats.states},
                  {"classes", r.stats.classes},
                  {"examined", r.stats.examined},
                  {"naive_candidates", r.stats.naive_candidates},
                  {"exhausted", r.stats.exhausted},
                  {"wall_seconds", r.stats.wall_seconds}};
  return doc.dump(2);
}

std::string verdict_json(const EncodedModel& k, const GameStructure& game,
                         const ltl::Verdict& v) {
  json doc{{"verdict", ltl::to_string(v.kind)}};
  if (v.counterexample) doc["lasso"] = lasso_doc(k, game, *v.counterexample);
  return doc.dump(2);
}

std::string traces_json(const ExtendedNet& ext, const std::vector<PlayTrace>& traces,
                        const std::vector<TraceVerdict>& verdicts) {
  const NetSystem& net = ext.net;
  json rows = json::array();
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const PlayTrace& t = traces[i];
    json markings = json::array();
    for (const Marking& m : t.markings) markings.push_back(names(net, ext.project(m)));
    rows.push_back({{"fired", transition_names(net, t.fired)},
                    {"markings", std::move(markings)},
                    {"status", to_string(t.status)},
                    {"verdict", i < verdicts.size() ? to_string(verdicts[i]) : "?"}});
  }
  return json{{"traces", std::move(rows)}}.dump(2);
}

std::string marking_graph_dot(const NetSystem& net, const MarkingGraph& mg) {
  std::ostringstream os;
  os << "digraph marking_graph {\n  node [shape=box];\n";
  for (StateId s = 0; s < mg.state_count(); ++s) {
    os << "  s" << s << " [label=\"" << dot_escape(net.format(mg.marking(s))) << "\""
       << (s == mg.initial() ? ", penwidth=2" : "") << "];\n";
  }
  for (const GraphEdge& e : mg.edges()) {
    os << "  s" << e.source << " -> s" << e.target << " [label=\""
       << dot_escape(net.transition(e.transition).name) << "\""
       << (net.controllable(e.transition) ? "" : ", style=dashed") << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string game_dot(const GameStructure& game) {
  const NetSystem& net = game.net.net;
  std::ostringstream os;
  os << "digraph game {\n  node [shape=box];\n";
  for (StateId s = 0; s < game.state_count(); ++s) {
    os << "  s" << s << " [label=\"" << dot_escape(net.format(game.states[s])) << "\\no="
       << dot_escape(net.format(game.observation[s])) << "\\nclass " << game.class_of[s] << "\""
       << (s == game.initial() ? ", penwidth=2" : "") << "];\n";
  }
  for (StateId s = 0; s < game.state_count(); ++s) {
    for (const GameMove& mv : game.moves[s]) {
      os << "  s" << s << " -> s" << mv.target << " [label=\""
         << dot_escape(net.transition(mv.transition).name) << "\""
         << (net.controllable(mv.transition) ? "" : ", style=dashed") << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string kripke_dot(const EncodedModel& k) {
  const auto& m = k.model;
  std::ostringstream os;
  os << "digraph kripke {\n";
  for (ltl::KState s = 0; s < m.state_count(); ++s) {
    std::string label;
    for (auto p = m.labels[s].find_first(); p != ltl::Valuation::npos;
         p = m.labels[s].find_next(p)) {
      if (!label.empty()) label += ", ";
      label += m.propositions[p];
    }
    const bool original = k.origin[s].kind == KripkeOrigin::Kind::GameState;
    os << "  k" << s << " [shape=" << (original ? "box" : "ellipse") << ", label=\"" << s
       << ": {" << dot_escape(label) << "}\"" << (s == m.initial ? ", penwidth=2" : "")
       << "];\n";
  }
  for (ltl::KState s = 0; s < m.state_count(); ++s) {
    for (ltl::KState t : m.successors[s]) os << "  k" << s << " -> k" << t << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace petrigame
