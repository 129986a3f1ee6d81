#include "petrigame/net.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "petrigame/error.hpp"

namespace petrigame {

namespace {

Marking to_marking(std::size_t width, const std::vector<PlaceId>& places) {
  Marking m(width);
  for (PlaceId p : places) m.set(p);
  return m;
}

}  // namespace

NetSystem::NetSystem(std::vector<Place> places, std::vector<Transition> transitions,
                     std::vector<PlaceId> initial)
    : places_(std::move(places)), transitions_(std::move(transitions)) {
  const std::size_t width = places_.size();
  for (PlaceId p = 0; p < width; ++p) {
    if (!place_index_.emplace(places_[p].name, p).second) {
      throw Error(Errc::DuplicateName, "duplicate place name '" + places_[p].name + "'");
    }
  }
  for (TransitionId t = 0; t < transitions_.size(); ++t) {
    const Transition& tr = transitions_[t];
    if (!transition_index_.emplace(tr.name, t).second) {
      throw Error(Errc::DuplicateName, "duplicate transition name '" + tr.name + "'");
    }
    if (tr.pre.empty()) {
      throw Error(Errc::EmptyPreset, "transition '" + tr.name + "' has an empty pre-set");
    }
    if (tr.post.empty()) {
      throw Error(Errc::EmptyPostset, "transition '" + tr.name + "' has an empty post-set");
    }
    for (const auto* arcs : {&tr.pre, &tr.post}) {
      std::set<PlaceId> seen;
      for (PlaceId p : *arcs) {
        if (p >= width) {
          throw Error(Errc::UnknownPlace,
                      "transition '" + tr.name + "' refers to an unknown place");
        }
        if (!seen.insert(p).second) {
          throw Error(Errc::DuplicateName, "transition '" + tr.name +
                                               "' lists place '" + places_[p].name + "' twice");
        }
      }
    }
  }
  for (PlaceId p : initial) {
    if (p >= width) throw Error(Errc::UnknownPlace, "initial marking refers to an unknown place");
  }

  initial_ = to_marking(width, initial);
  observable_ = Marking(width);
  for (PlaceId p = 0; p < width; ++p) {
    if (places_[p].observable) observable_.set(p);
  }
  for (TransitionId t = 0; t < transitions_.size(); ++t) {
    const Transition& tr = transitions_[t];
    presets_.push_back(to_marking(width, tr.pre));
    postsets_.push_back(to_marking(width, tr.post));
    if (tr.controllable) {
      controllable_.push_back(t);
      if (!presets_.back().is_subset_of(observable_)) {
        throw Error(Errc::UnobservableControllablePreplace,
                    "controllable transition '" + tr.name + "' has an unobservable pre-place");
      }
    } else {
      environment_.push_back(t);
    }
  }
}

std::optional<PlaceId> NetSystem::find_place(std::string_view name) const {
  auto it = place_index_.find(std::string(name));
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TransitionId> NetSystem::find_transition(std::string_view name) const {
  auto it = transition_index_.find(std::string(name));
  if (it == transition_index_.end()) return std::nullopt;
  return it->second;
}

Marking NetSystem::marking_of(std::span<const std::string> names) const {
  Marking m = empty_marking();
  for (const auto& name : names) {
    auto p = find_place(name);
    if (!p) throw Error(Errc::UnknownPlace, "unknown place '" + name + "'");
    m.set(*p);
  }
  return m;
}

Marking NetSystem::marking_of(std::initializer_list<std::string_view> names) const {
  std::vector<std::string> copy(names.begin(), names.end());
  return marking_of(copy);
}

std::vector<std::string> NetSystem::names_of(const Marking& m) const {
  std::vector<std::string> out;
  for (auto p = m.find_first(); p != Marking::npos; p = m.find_next(p)) {
    out.push_back(places_[p].name);
  }
  return out;
}

std::string NetSystem::format(const Marking& m) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& name : names_of(m)) {
    if (!first) os << ',';
    os << name;
    first = false;
  }
  os << '}';
  return os.str();
}

bool is_enabled(const NetSystem& net, const Marking& m, TransitionId t) {
  return net.preset(t).is_subset_of(m);
}

std::vector<TransitionId> enabled_at(const NetSystem& net, const Marking& m) {
  std::vector<TransitionId> out;
  for (TransitionId t = 0; t < net.transition_count(); ++t) {
    if (is_enabled(net, m, t)) out.push_back(t);
  }
  return out;
}

Marking fire(const NetSystem& net, const Marking& m, TransitionId t) {
  const Marking& pre = net.preset(t);
  const Marking& post = net.postset(t);
  if (!pre.is_subset_of(m)) {
    throw Error(Errc::NotEnabled, "transition '" + net.transition(t).name +
                                      "' is not enabled at " + net.format(m));
  }
  if ((post - pre).intersects(m)) {
    throw Error(Errc::SafetyViolation, "firing '" + net.transition(t).name + "' at " +
                                           net.format(m) + " puts a second token on a place");
  }
  return (m - pre) | post;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw Error(Errc::UnknownKey,
                  "unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

std::vector<std::string> string_list(const json& obj, const char* key, bool required) {
  if (!obj.contains(key)) {
    if (required) throw Error(Errc::Syntax, std::string("missing key '") + key + "'");
    return {};
  }
  const json& arr = obj.at(key);
  if (!arr.is_array()) throw Error(Errc::Syntax, std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) {
      throw Error(Errc::Syntax, std::string("'") + key + "' must contain strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

NetSystem parse_net(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Syntax, std::string("net document: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::Syntax, "net document must be a JSON object");
  reject_unknown_keys(doc, {"places", "transitions", "initial", "observable"}, "net document");

  const auto place_names = string_list(doc, "places", true);
  std::unordered_map<std::string, PlaceId> index;
  std::vector<Place> places;
  for (const auto& name : place_names) {
    if (!index.emplace(name, static_cast<PlaceId>(places.size())).second) {
      throw Error(Errc::DuplicateName, "duplicate place name '" + name + "'");
    }
    places.push_back(Place{name, false, false});
  }
  auto resolve = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw Error(Errc::UnknownPlace, "unknown place '" + name + "'");
    return it->second;
  };

  for (const auto& name : string_list(doc, "observable", false)) {
    places[resolve(name)].observable = true;
  }

  std::vector<Transition> transitions;
  if (!doc.contains("transitions") || !doc.at("transitions").is_array()) {
    throw Error(Errc::Syntax, "'transitions' must be an array");
  }
  for (const auto& jt : doc.at("transitions")) {
    if (!jt.is_object()) throw Error(Errc::Syntax, "transition entries must be objects");
    reject_unknown_keys(jt, {"name", "pre", "post", "controllable"}, "transition");
    if (!jt.contains("name") || !jt.at("name").is_string()) {
      throw Error(Errc::Syntax, "transition without a string 'name'");
    }
    Transition t;
    t.name = jt.at("name").get<std::string>();
    for (const auto& n : string_list(jt, "pre", true)) t.pre.push_back(resolve(n));
    for (const auto& n : string_list(jt, "post", true)) t.post.push_back(resolve(n));
    if (jt.contains("controllable")) {
      if (!jt.at("controllable").is_boolean()) {
        throw Error(Errc::Syntax, "'controllable' must be a boolean");
      }
      t.controllable = jt.at("controllable").get<bool>();
    }
    transitions.push_back(std::move(t));
  }

  std::vector<PlaceId> initial;
  for (const auto& name : string_list(doc, "initial", true)) initial.push_back(resolve(name));

  return NetSystem(std::move(places), std::move(transitions), std::move(initial));
}

std::string write_net(const NetSystem& net) {
  json doc;
  doc["places"] = json::array();
  doc["observable"] = json::array();
  for (const auto& p : net.places()) {
    doc["places"].push_back(p.name);
    if (p.observable) doc["observable"].push_back(p.name);
  }
  doc["transitions"] = json::array();
  for (const auto& t : net.transitions()) {
    json jt;
    jt["name"] = t.name;
    jt["pre"] = json::array();
    jt["post"] = json::array();
    for (PlaceId p : t.pre) jt["pre"].push_back(net.place(p).name);
    for (PlaceId p : t.post) jt["post"].push_back(net.place(p).name);
    jt["controllable"] = t.controllable;
    doc["transitions"].push_back(std::move(jt));
  }
  doc["initial"] = net.names_of(net.initial());
  return doc.dump(2);
}

}  // namespace petrigame
