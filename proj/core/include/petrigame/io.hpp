#pragma once

#include <string>
#include <string_view>

#include "petrigame/kripke.hpp"
#include "petrigame/play_oracle.hpp"
#include "petrigame/synthesis.hpp"

namespace petrigame {

// Strategy documents: {"observations":[{"observe":[places],"fire":"t"|null}]}
// with place names of Sigma' (implicit places by their region names).
std::string write_strategy(const GameStructure& game, const NetStrategy& s);
// Throws Syntax, UnknownPlace, UnknownTransition.
NetStrategy parse_strategy(const GameStructure& game, std::string_view text);

// JSON reports. All are pretty printed.
std::string regions_json(const Analysis& a);
std::string stable_json(const Analysis& a);
std::string game_json(const GameStructure& game);
std::string synthesis_json(const Analysis& a, const SynthesisResult& r);
std::string verdict_json(const EncodedModel& k, const GameStructure& game,
                         const ltl::Verdict& v);
std::string traces_json(const ExtendedNet& ext, const std::vector<PlayTrace>& traces,
                        const std::vector<TraceVerdict>& verdicts);

// Graphviz exports.
std::string marking_graph_dot(const NetSystem& net, const MarkingGraph& mg);
std::string game_dot(const GameStructure& game);
std::string kripke_dot(const EncodedModel& k);

}  // namespace petrigame
