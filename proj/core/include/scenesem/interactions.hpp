#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenesem/calculi.hpp"
#include "scenesem/fluents.hpp"
#include "scenesem/sth.hpp"

namespace scenesem {

struct InteractionConfig {
  double max_gap = 1.0;  // s, largest gap allowed on a `before` edge
  double z_lift = 0.10;  // m, rise required by pick_up
  double eps_t = 1e-6;   // s, endpoint tolerance for Allen checks
};

enum class RoleType { person, object, structure };
std::string_view label(RoleType t);

struct RoleDef {
  std::string var;   // variable used in node arguments, e.g. "P"
  std::string name;  // serialized role name, e.g. "person"
  RoleType type;
};

/// A required fluent interval or sub-event. Arguments are role variables;
/// "hand(P)" denotes either hand of the person bound to P.
struct NodeDef {
  std::string id;
  std::string pattern;
  std::vector<std::string> args;
  bool sub_event = false;
};

/// The special node id naming the event interval itself.
inline constexpr std::string_view kEventNode = "event";

struct EdgeDef {
  std::string from;
  std::string to;
  std::vector<Allen> allowed;
  std::optional<double> max_gap;      // bound on to.t1 - from.t2 for `before`
  std::optional<double> min_overlap;  // bound on the shared duration
};

struct InteractionDef;

/// Bindings handed to a definition's extra predicate.
struct MatchContext {
  const SceneRecording& scene;
  const InteractionConfig& cfg;
  const std::map<std::string, std::string>& binding;  // var or hand(var) -> id
  const std::map<std::string, TimeInterval>& nodes;   // node id -> interval
  const TimeInterval& event;
};

struct InteractionDef {
  std::string name;
  std::vector<RoleDef> roles;
  std::vector<NodeDef> nodes;
  std::vector<EdgeDef> edges;
  std::string start_node;  // event starts where this node starts
  std::string end_node;    // and ends where this node ends
  std::optional<std::string> end_clip_node;  // end is the earlier of end_node and this
  std::function<bool(const MatchContext&)> predicate;
  std::string predicate_doc;
  /// Sub-interactions that only appear inside other groundings set this false.
  bool report = true;
};

/// reach_for, grasp, pick_up, put_down, pass_over, moves_into, passes.
/// `patterns` supplies dur_min for grasp; `cfg` the gap bound on `before` edges.
std::vector<InteractionDef> builtin_defs(const PatternConfig& patterns = {},
                                         const InteractionConfig& cfg = {});

/// Throws UnknownFluentName / ArityMismatch / UnknownInteraction for
/// ill-formed definitions and InvalidEntity for cyclic sub-event references.
void validate_defs(const std::vector<InteractionDef>& defs);

struct InteractionEvent;

struct GroundingNode {
  std::string node;   // node id within the definition
  std::string label;  // fluent text or interaction label
  bool is_event = false;
  TimeInterval interval;
  std::vector<InteractionEvent> sub_event;  // one entry for sub-event nodes
};

struct GroundingLink {
  std::string from;
  std::string to;
  Allen relation;
};

struct InteractionEvent {
  std::string name;
  /// Role name -> bound id in definition order; hands appear after the roles.
  std::vector<std::pair<std::string, std::string>> participants;
  TimeInterval interval;
  std::vector<GroundingNode> grounding;
  std::vector<GroundingLink> links;

  /// "reach_for(p1, bread)" over the non-hand roles.
  std::string label() const;
  std::optional<std::string> participant(std::string_view role) const;
};

/// All matches of every definition, deduplicated per definition and
/// participants by keeping the longest, sorted by start time.
std::vector<InteractionEvent> recognize(const SceneRecording& scene,
                                        const std::vector<InteractionDef>& defs,
                                        const PatternConfig& patterns = {},
                                        const InteractionConfig& cfg = {});
std::vector<InteractionEvent> recognize(FluentIndex& index, const std::vector<InteractionDef>& defs,
                                        const InteractionConfig& cfg = {});

struct OccursQuery {
  std::string name;
  std::map<std::string, std::string> bound;  // role name -> id
  std::optional<std::pair<std::vector<Allen>, TimeInterval>> within;  // allowed allen(event, iv)
};

/// Unbound role assignments of every event unifying with the query.
/// Throws UnknownInteraction when the name is not among `defs`.
std::vector<std::map<std::string, std::string>> occurs_in_query(
    const OccursQuery& q, const std::vector<InteractionEvent>& events,
    const std::vector<InteractionDef>& defs, double eps_t = 1e-6);

nlohmann::ordered_json to_json(const InteractionEvent& e);
InteractionEvent event_from_json(const nlohmann::ordered_json& j);

/// Indented text tree; every node shows its interval and Allen links.
std::string grounding_report(const InteractionEvent& e);

}  // namespace scenesem
