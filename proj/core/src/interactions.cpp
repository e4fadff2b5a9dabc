#include "scenesem/interactions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "scenesem/error.hpp"

namespace scenesem {

namespace {

using A = Allen;

const std::vector<std::string_view> kHands = {"hand_left", "hand_right"};

bool is_hand_arg(std::string_view a) { return a.starts_with("hand(") && a.ends_with(")"); }
std::string hand_var(std::string_view a) { return std::string(a.substr(5, a.size() - 6)); }
std::string hand_arg(std::string_view var) { return "hand(" + std::string(var) + ")"; }

std::string hand_role(const InteractionDef& d, std::string_view var) {
  int persons = 0;
  for (const auto& r : d.roles) persons += r.type == RoleType::person;
  for (const auto& r : d.roles)
    if (r.var == var) return persons == 1 ? "hand" : r.name + "_hand";
  return "hand";
}

std::string fmt3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

bool overlaps_interior(const TimeInterval& a, const TimeInterval& b) {
  return a.t1 < b.t2 && b.t1 < a.t2;
}

const InteractionDef* find_def(const std::vector<InteractionDef>& defs, std::string_view name) {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

// Sub-events are recognized before the definitions that reference them.
std::vector<const InteractionDef*> dependency_order(const std::vector<InteractionDef>& defs) {
  std::vector<const InteractionDef*> out;
  std::set<std::string> done, active;
  std::function<void(const InteractionDef&)> visit = [&](const InteractionDef& d) {
    if (done.count(d.name)) return;
    if (active.count(d.name))
      throw Error(Errc::InvalidEntity, "cyclic sub-event reference through " + d.name);
    active.insert(d.name);
    for (const auto& n : d.nodes) {
      if (!n.sub_event) continue;
      const InteractionDef* sub = find_def(defs, n.pattern);
      if (!sub) throw Error(Errc::UnknownInteraction, "unknown sub-event '" + n.pattern + "'");
      visit(*sub);
    }
    active.erase(d.name);
    done.insert(d.name);
    out.push_back(&d);
  };
  for (const auto& d : defs) visit(d);
  return out;
}

struct Candidate {
  TimeInterval iv;
  std::string label;
  const InteractionEvent* event = nullptr;
};

bool edge_ok(const EdgeDef& e, const TimeInterval& a, const TimeInterval& b, double eps_t, Allen* rel) {
  const Allen r = allen(a, b, eps_t);
  if (rel) *rel = r;
  if (std::find(e.allowed.begin(), e.allowed.end(), r) == e.allowed.end()) return false;
  if (e.max_gap && r == A::before && b.t1 - a.t2 > *e.max_gap + eps_t) return false;
  if (e.min_overlap && std::min(a.t2, b.t2) - std::max(a.t1, b.t1) < *e.min_overlap - eps_t)
    return false;
  return true;
}

class Matcher {
 public:
  Matcher(const InteractionDef& def, const std::vector<InteractionDef>& defs, FluentIndex& index,
          const std::map<std::string, std::vector<InteractionEvent>>& done,
          const InteractionConfig& cfg)
      : def_(def), defs_(defs), index_(index), done_(done), cfg_(cfg) {
    for (const auto& n : def.nodes) {
      node_pos_[n.id] = node_pos_.size();
      for (const auto& a : n.args)
        if (is_hand_arg(a) && std::find(hand_vars_.begin(), hand_vars_.end(), hand_var(a)) == hand_vars_.end())
          hand_vars_.push_back(hand_var(a));
    }
  }

  std::vector<InteractionEvent> run() {
    bind_role(0);
    return std::move(found_);
  }

 private:
  const SceneRecording& scene() const { return index_.scene(); }

  std::vector<std::string> role_candidates(RoleType t) const {
    switch (t) {
      case RoleType::person: return scene().ids_of_kind(ObjectKind::person);
      case RoleType::object: return scene().ids_of_kind(ObjectKind::object);
      case RoleType::structure: return scene().ids_of_kind(ObjectKind::floorplan_structure);
    }
    return {};
  }

  void bind_role(std::size_t r) {
    if (r == def_.roles.size()) {
      bind_hand(0);
      return;
    }
    const RoleDef& role = def_.roles[r];
    for (const auto& id : role_candidates(role.type)) {
      bool taken = false;
      for (std::size_t q = 0; q < r; ++q) taken |= binding_[def_.roles[q].var] == id;
      if (taken) continue;
      binding_[role.var] = id;
      bind_role(r + 1);
    }
    binding_.erase(role.var);
  }

  void bind_hand(std::size_t h) {
    if (h == hand_vars_.size()) {
      match_binding();
      return;
    }
    const std::string& var = hand_vars_[h];
    for (auto joint : kHands) {
      std::string id = body_part_id(binding_.at(var), joint);
      if (!scene().has(id)) continue;
      binding_[hand_arg(var)] = id;
      bind_hand(h + 1);
    }
    binding_.erase(hand_arg(var));
  }

  std::vector<Candidate> candidates(const NodeDef& n) {
    std::vector<Candidate> out;
    if (!n.sub_event) {
      Fluent f{n.pattern, {}};
      for (const auto& a : n.args) f.args.push_back(binding_.at(a));
      for (const auto& iv : index_.intervals(f)) out.push_back({iv.interval, f.to_string(), nullptr});
      return out;
    }
    const InteractionDef& sub = *find_def(defs_, n.pattern);
    auto it = done_.find(n.pattern);
    if (it == done_.end()) return out;
    for (const auto& ev : it->second) {
      bool ok = true;
      for (std::size_t i = 0; i < sub.roles.size() && ok; ++i) {
        ok = ev.participant(sub.roles[i].name) == binding_.at(n.args[i]);
        auto hand = binding_.find(hand_arg(n.args[i]));
        if (ok && sub.roles[i].type == RoleType::person && hand != binding_.end()) {
          auto used = ev.participant(hand_role(sub, sub.roles[i].var));
          ok = !used || *used == hand->second;
        }
      }
      if (ok) out.push_back({ev.interval, ev.label(), &ev});
    }
    return out;
  }

  void match_binding() {
    cands_.clear();
    for (const auto& n : def_.nodes) {
      cands_.push_back(candidates(n));
      if (cands_.back().empty()) return;
    }
    chosen_.assign(def_.nodes.size(), 0);
    assign(0);
  }

  void assign(std::size_t k) {
    if (k == def_.nodes.size()) {
      finish();
      return;
    }
    for (std::size_t c = 0; c < cands_[k].size(); ++c) {
      chosen_[k] = c;
      bool ok = true;
      for (const auto& e : def_.edges) {
        if (e.from == kEventNode || e.to == kEventNode) continue;
        std::size_t a = node_pos_.at(e.from), b = node_pos_.at(e.to);
        if (std::max(a, b) != k) continue;
        if (!edge_ok(e, cands_[a][chosen_[a]].iv, cands_[b][chosen_[b]].iv, cfg_.eps_t, nullptr)) {
          ok = false;
          break;
        }
      }
      if (ok) assign(k + 1);
    }
  }

  const TimeInterval& iv_of(std::string_view node) const {
    std::size_t p = node_pos_.at(std::string(node));
    return cands_[p][chosen_[p]].iv;
  }

  void finish() {
    double t1 = iv_of(def_.start_node).t1;
    double t2 = iv_of(def_.end_node).t2;
    if (def_.end_clip_node) t2 = std::min(t2, iv_of(*def_.end_clip_node).t2);
    if (!(t2 > t1 + cfg_.eps_t)) return;
    const TimeInterval event(t1, t2);

    std::vector<GroundingLink> links;
    for (const auto& e : def_.edges) {
      const TimeInterval& a = e.from == kEventNode ? event : iv_of(e.from);
      const TimeInterval& b = e.to == kEventNode ? event : iv_of(e.to);
      Allen rel{};
      if (!edge_ok(e, a, b, cfg_.eps_t, &rel)) return;
      links.push_back({e.from, e.to, rel});
    }

    std::map<std::string, TimeInterval> nodes;
    for (const auto& n : def_.nodes) nodes.emplace(n.id, iv_of(n.id));
    if (def_.predicate && !def_.predicate(MatchContext{scene(), cfg_, binding_, nodes, event})) return;

    InteractionEvent ev{def_.name, {}, event, {}, std::move(links)};
    for (const auto& r : def_.roles) ev.participants.emplace_back(r.name, binding_.at(r.var));
    for (const auto& r : def_.roles) {
      auto h = binding_.find(hand_arg(r.var));
      if (h != binding_.end()) ev.participants.emplace_back(hand_role(def_, r.var), h->second);
    }
    for (std::size_t k = 0; k < def_.nodes.size(); ++k) {
      const Candidate& c = cands_[k][chosen_[k]];
      GroundingNode g{def_.nodes[k].id, c.label, c.event != nullptr, c.iv, {}};
      if (c.event) g.sub_event.push_back(*c.event);
      ev.grounding.push_back(std::move(g));
    }
    found_.push_back(std::move(ev));
  }

  const InteractionDef& def_;
  const std::vector<InteractionDef>& defs_;
  FluentIndex& index_;
  const std::map<std::string, std::vector<InteractionEvent>>& done_;
  const InteractionConfig& cfg_;

  std::map<std::string, std::size_t> node_pos_;
  std::vector<std::string> hand_vars_;
  std::map<std::string, std::string> binding_;
  std::vector<std::vector<Candidate>> cands_;
  std::vector<std::size_t> chosen_;
  std::vector<InteractionEvent> found_;
};

std::string role_key(const InteractionEvent& e) {
  std::string k = e.name;
  for (const auto& [role, id] : e.participants)
    if (role != "hand" && !role.ends_with("_hand")) k += "|" + role + "=" + id;
  return k;
}

std::string hand_key(const InteractionEvent& e) {
  std::string k;
  for (const auto& [role, id] : e.participants)
    if (role == "hand" || role.ends_with("_hand")) k += id + "|";
  return k;
}

// Longest first; among overlapping matches with the same participants only
// the first survives.
std::vector<InteractionEvent> deduplicate(std::vector<InteractionEvent> evs) {
  std::stable_sort(evs.begin(), evs.end(), [](const InteractionEvent& a, const InteractionEvent& b) {
    double da = a.interval.duration(), db = b.interval.duration();
    if (da != db) return da > db;
    if (a.interval.t1 != b.interval.t1) return a.interval.t1 < b.interval.t1;
    return hand_key(a) < hand_key(b);
  });
  std::vector<InteractionEvent> kept;
  for (auto& e : evs) {
    const std::string key = role_key(e);
    bool clash = std::any_of(kept.begin(), kept.end(), [&](const InteractionEvent& k) {
      return role_key(k) == key && overlaps_interior(k.interval, e.interval);
    });
    if (!clash) kept.push_back(std::move(e));
  }
  return kept;
}

void sort_events(std::vector<InteractionEvent>& evs) {
  std::stable_sort(evs.begin(), evs.end(), [](const InteractionEvent& a, const InteractionEvent& b) {
    if (a.interval.t1 != b.interval.t1) return a.interval.t1 < b.interval.t1;
    if (a.interval.t2 != b.interval.t2) return a.interval.t2 < b.interval.t2;
    if (a.name != b.name) return a.name < b.name;
    return a.participants < b.participants;
  });
}

std::vector<A> all_intersecting() {
  return {A::overlaps, A::overlapped_by, A::starts, A::started_by, A::during,
          A::contains, A::finishes, A::finished_by, A::equals};
}

}  // namespace

std::string_view label(RoleType t) {
  switch (t) {
    case RoleType::person: return "person";
    case RoleType::object: return "object";
    case RoleType::structure: return "structure";
  }
  return "object";
}

std::vector<InteractionDef> builtin_defs(const PatternConfig& patterns, const InteractionConfig& cfg) {
  std::vector<InteractionDef> d;
  const RoleDef P{"P", "person", RoleType::person};
  const RoleDef O{"O", "object", RoleType::object};
  const RoleDef S{"S", "structure", RoleType::structure};

  d.push_back({"reach_for",
               {P, O},
               {{"approach", "approaching", {"hand(P)", "O"}}, {"touch", "touching", {"hand(P)", "O"}}},
               {{"approach", "touch", {A::meets}},
                {"approach", std::string(kEventNode), {A::starts}},
                {"touch", std::string(kEventNode), {A::finishes}}},
               "approach",
               "touch"});

  InteractionDef grasp{"grasp",
                       {P, O},
                       {{"touch", "touching", {"hand(P)", "O"}}, {"still", "stationary", {"hand(P)"}}},
                       {{"touch", "still", all_intersecting(), std::nullopt, patterns.dur_min}},
                       "touch",
                       "touch",
                       "still"};
  grasp.predicate = [](const MatchContext& m) {
    return std::abs(m.nodes.at("still").t1 - m.nodes.at("touch").t1) <= m.cfg.max_gap;
  };
  grasp.predicate_doc = "the hand comes to rest within max_gap of first contact";
  grasp.report = false;
  d.push_back(std::move(grasp));

  InteractionDef pick{"pick_up",
                      {P, O},
                      {{"grasp", "grasp", {"P", "O"}, true},
                       {"attach", "attached", {"hand(P)", "O"}},
                       {"lift", "moving_up", {"O"}}},
                      {{"grasp", "lift", {A::before, A::meets, A::overlaps}, cfg.max_gap},
                       {"lift", "attach", {A::during, A::starts, A::finishes, A::equals}}},
                      "grasp",
                      "lift"};
  pick.predicate = [](const MatchContext& m) {
    const auto& lift = m.nodes.at("lift");
    const std::string& o = m.binding.at("O");
    return position(m.scene, o, lift.t2).z - position(m.scene, o, lift.t1).z >= m.cfg.z_lift;
  };
  pick.predicate_doc = "the object rises by at least z_lift";
  d.push_back(std::move(pick));

  d.push_back({"put_down",
               {P, O},
               {{"lower", "moving_down", {"O"}},
                {"attach", "attached", {"hand(P)", "O"}},
                {"touch", "touching", {"hand(P)", "O"}},
                {"rest", "stationary", {"O"}}},
               {{"lower", "attach", {A::during, A::starts, A::finishes, A::equals}},
                {"lower", "touch", {A::during, A::starts, A::finishes, A::equals}},
                {"touch", "rest",
                 {A::meets, A::overlaps, A::starts, A::during, A::finishes, A::equals, A::finished_by}}},
               "lower",
               "touch"});

  const RoleDef P1{"P1", "giver", RoleType::person};
  const RoleDef P2{"P2", "receiver", RoleType::person};
  d.push_back({"pass_over",
               {P1, P2, O},
               {{"pick", "pick_up", {"P1", "O"}, true},
                {"carry", "attached", {"hand(P1)", "O"}},
                {"reach", "approaching", {"hand(P1)", "hand(P2)"}},
                {"take", "grasp", {"P2", "O"}, true},
                {"hold", "touching", {"hand(P1)", "O"}}},
               {{"pick", "carry", {A::before, A::meets, A::overlaps, A::starts, A::during}, cfg.max_gap},
                {"reach", "take", {A::before, A::meets, A::overlaps}, cfg.max_gap},
                {"carry", "take", {A::before, A::meets, A::overlaps}, cfg.max_gap},
                {"hold", "take", {A::overlaps}},
                {"hold", std::string(kEventNode), {A::starts, A::overlaps, A::during}}},
               "pick",
               "take"});

  d.push_back({"moves_into", {P, S}, {{"enter", "moving_into", {"P", "S"}}}, {}, "enter", "enter"});

  InteractionDef passes{"passes",
                        {P, S},
                        {{"enter", "moves_into", {"P", "S"}, true},
                         {"stay", "inside", {"P", "S"}},
                         {"leave", "moving_out", {"P", "S"}}},
                        {{"enter", "stay", {A::meets}}, {"stay", "leave", {A::meets}}},
                        "enter",
                        "leave"};
  passes.predicate = [](const MatchContext& m) {
    const std::string& p = m.binding.at("P");
    const SpatialEntity& s = m.scene.track(m.binding.at("S")).history.samples().front().entity;
    const Vec2 axis = orientation_axis(s);
    const Vec2 c = xy(centroid(s));
    const double in = dot(xy(position(m.scene, p, m.nodes.at("stay").t1)) - c, axis);
    const double out = dot(xy(position(m.scene, p, m.nodes.at("stay").t2)) - c, axis);
    return in * out < 0.0;
  };
  passes.predicate_doc = "entry and exit lie on opposite ends of the major axis";
  d.push_back(std::move(passes));
  return d;
}

void validate_defs(const std::vector<InteractionDef>& defs) {
  (void)dependency_order(defs);
  for (const auto& d : defs) {
    std::set<std::string> vars, ids;
    for (const auto& r : d.roles) vars.insert(r.var);
    for (const auto& n : d.nodes) {
      if (!ids.insert(n.id).second || n.id == kEventNode)
        throw Error(Errc::InvalidEntity, d.name + ": duplicate node id '" + n.id + "'");
      std::size_t arity;
      if (n.sub_event) {
        arity = find_def(defs, n.pattern)->roles.size();
      } else {
        arity = static_cast<std::size_t>(pattern_info(n.pattern).arity);
      }
      if (n.args.size() != arity)
        throw Error(Errc::ArityMismatch, d.name + ": node '" + n.id + "' has wrong arity");
      for (const auto& a : n.args) {
        std::string v = is_hand_arg(a) ? hand_var(a) : a;
        if (!vars.count(v)) throw Error(Errc::InvalidEntity, d.name + ": unbound variable '" + a + "'");
      }
    }
    auto known = [&](const std::string& id) { return id == kEventNode || ids.count(id); };
    for (const auto& e : d.edges)
      if (!known(e.from) || !known(e.to) || e.allowed.empty())
        throw Error(Errc::InvalidEntity, d.name + ": malformed edge " + e.from + " -> " + e.to);
    if (!ids.count(d.start_node) || !ids.count(d.end_node) ||
        (d.end_clip_node && !ids.count(*d.end_clip_node)))
      throw Error(Errc::InvalidEntity, d.name + ": start/end node missing");
  }
}

std::string InteractionEvent::label() const {
  std::string s = name + "(";
  bool first = true;
  for (const auto& [role, id] : participants) {
    if (role == "hand" || role.ends_with("_hand")) continue;
    if (!first) s += ", ";
    s += id;
    first = false;
  }
  return s + ")";
}

std::optional<std::string> InteractionEvent::participant(std::string_view role) const {
  for (const auto& [r, id] : participants)
    if (r == role) return id;
  return std::nullopt;
}

std::vector<InteractionEvent> recognize(FluentIndex& index, const std::vector<InteractionDef>& defs,
                                        const InteractionConfig& cfg) {
  validate_defs(defs);
  std::map<std::string, std::vector<InteractionEvent>> done;
  std::vector<InteractionEvent> out;
  if (index.scene().empty()) return out;
  for (const InteractionDef* d : dependency_order(defs)) {
    auto evs = deduplicate(Matcher(*d, defs, index, done, cfg).run());
    sort_events(evs);
    if (d->report) out.insert(out.end(), evs.begin(), evs.end());
    done[d->name] = std::move(evs);
  }
  sort_events(out);
  return out;
}

std::vector<InteractionEvent> recognize(const SceneRecording& scene,
                                        const std::vector<InteractionDef>& defs,
                                        const PatternConfig& patterns, const InteractionConfig& cfg) {
  FluentIndex index(scene, patterns);
  return recognize(index, defs, cfg);
}

std::vector<std::map<std::string, std::string>> occurs_in_query(
    const OccursQuery& q, const std::vector<InteractionEvent>& events,
    const std::vector<InteractionDef>& defs, double eps_t) {
  if (!find_def(defs, q.name))
    throw Error(Errc::UnknownInteraction, "unknown interaction '" + q.name + "'");
  std::vector<std::map<std::string, std::string>> out;
  for (const auto& e : events) {
    if (e.name != q.name) continue;
    bool ok = true;
    for (const auto& [role, id] : q.bound) ok = ok && e.participant(role) == id;
    if (ok && q.within) {
      const auto& [allowed, iv] = *q.within;
      ok = std::find(allowed.begin(), allowed.end(), allen(e.interval, iv, eps_t)) != allowed.end();
    }
    if (!ok) continue;
    std::map<std::string, std::string> b;
    for (const auto& [role, id] : e.participants)
      if (!q.bound.count(role)) b[role] = id;
    out.push_back(std::move(b));
  }
  return out;
}

nlohmann::ordered_json to_json(const InteractionEvent& e) {
  nlohmann::ordered_json j;
  j["name"] = e.name;
  j["participants"] = nlohmann::ordered_json::object();
  for (const auto& [role, id] : e.participants) j["participants"][role] = id;
  j["t1"] = e.interval.t1;
  j["t2"] = e.interval.t2;
  j["grounding"] = nlohmann::ordered_json::array();
  for (const auto& g : e.grounding) {
    nlohmann::ordered_json n;
    n["node"] = g.node;
    n["kind"] = g.is_event ? "event" : "fluent";
    n["label"] = g.label;
    n["t1"] = g.interval.t1;
    n["t2"] = g.interval.t2;
    if (!g.sub_event.empty()) n["event"] = to_json(g.sub_event.front());
    j["grounding"].push_back(std::move(n));
  }
  j["relations"] = nlohmann::ordered_json::array();
  for (const auto& l : e.links)
    j["relations"].push_back({{"from", l.from}, {"to", l.to}, {"relation", label(l.relation)}});
  return j;
}

InteractionEvent event_from_json(const nlohmann::ordered_json& j) {
  try {
    InteractionEvent e{j.at("name").get<std::string>(), {},
                       TimeInterval(j.at("t1").get<double>(), j.at("t2").get<double>()), {}, {}};
    for (const auto& [role, id] : j.at("participants").items())
      e.participants.emplace_back(role, id.get<std::string>());
    for (const auto& n : j.at("grounding")) {
      GroundingNode g{n.at("node").get<std::string>(), n.at("label").get<std::string>(),
                      n.at("kind").get<std::string>() == "event",
                      TimeInterval(n.at("t1").get<double>(), n.at("t2").get<double>()), {}};
      if (n.contains("event")) g.sub_event.push_back(event_from_json(n.at("event")));
      e.grounding.push_back(std::move(g));
    }
    for (const auto& l : j.at("relations")) {
      auto rel = parse_allen(l.at("relation").get<std::string>());
      if (!rel) throw Error(Errc::ParseError, "unknown Allen relation in event");
      e.links.push_back({l.at("from").get<std::string>(), l.at("to").get<std::string>(), *rel});
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, std::string("malformed event: ") + ex.what());
  }
}

namespace {

void render(const InteractionEvent& e, const std::string& indent, std::string& out) {
  for (std::size_t k = 0; k < e.grounding.size(); ++k) {
    const GroundingNode& g = e.grounding[k];
    const bool last = k + 1 == e.grounding.size();
    out += indent + "+- " + g.node + ": " + g.label + " [" + fmt3(g.interval.t1) + ", " +
           fmt3(g.interval.t2) + "]";
    std::string rel;
    for (const auto& l : e.links) {
      if (l.from != g.node) continue;
      rel += (rel.empty() ? "" : ", ") + std::string(label(l.relation)) + " " + l.to;
    }
    if (!rel.empty()) out += "  {" + rel + "}";
    out += "\n";
    if (!g.sub_event.empty()) render(g.sub_event.front(), indent + (last ? "   " : "|  "), out);
  }
}

}  // namespace

std::string grounding_report(const InteractionEvent& e) {
  std::string out = e.label() + " [" + fmt3(e.interval.t1) + ", " + fmt3(e.interval.t2) + "]";
  for (const auto& [role, id] : e.participants)
    if (role == "hand" || role.ends_with("_hand")) out += " " + role + "=" + id;
  out += "\n";
  render(e, "", out);
  return out;
}

}  // namespace scenesem
