#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenesem/floorplan.hpp"
#include "scenesem/interactions.hpp"
#include "scenesem/sth.hpp"

namespace scenesem {

struct ControlAction {
  std::string name = "enter";
  std::string target;  // structure id
  std::string agent = "robot";
};

struct PlannedPath {
  std::string robot_id = "robot";
  std::vector<Point2> waypoints;  // at least two
  std::vector<double> times;      // empty or one per waypoint
};

/// Throws InvalidEntity for fewer than two waypoints, non-finite coordinates
/// or a time list of the wrong length.
void validate(const PlannedPath& path);
/// `[[x,y],...]` or `{"robot": id, "waypoints": [[x,y],...], "times": [...]}`.
/// Throws ParseError.
PlannedPath path_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const PlannedPath& path);

/// People and the floor plan in one map frame, plus the passes events
/// recognized on that scene.
struct WorldState {
  FloorPlan plan;
  SceneRecording scene;  // contains the structure tracks
  PlannedPath path;
  std::vector<InteractionEvent> events;
  double min_dim = 1.0;  // m; direction threshold is a quarter of this
};

/// Adds structure tracks to the frames and runs passes recognition.
WorldState make_world(FloorPlan plan, std::span<const SceneFrame> people, PlannedPath path,
                      const SthConfig& sth = {}, const PatternConfig& patterns = {},
                      const InteractionConfig& interactions = {}, double min_dim = 1.0);

/// +1 / -1 along the structure's major axis for the part of the polyline that
/// lies in the rectangle; nullopt when that displacement is below min_dim / 4.
/// Throws TrackOutsideStructure when the polyline never meets the rectangle.
std::optional<int> transit_direction(const std::vector<Point2>& track, const FloorPlanStructure& fs,
                                     double min_dim = 1.0);

struct Blocker {
  std::string person;
  std::string reason;
};

struct NavVerdict {
  ControlAction action;
  double t = 0.0;
  bool possible = false;
  std::string rule;  // not_corridor | no_person | same_direction | blocked
  std::string explanation;
  std::vector<std::string> persons_inside;
  std::vector<Blocker> blockers;
  std::optional<int> robot_direction;
};

/// Throws UnknownStructure when the target is not in the plan.
NavVerdict poss_at(const ControlAction& action, double t, const WorldState& world);

/// Verdicts for the structures the path crosses, in order of first entry.
std::vector<NavVerdict> plan_check(const PlannedPath& path, const WorldState& world, double t);

nlohmann::ordered_json to_json(const NavVerdict& v);

}  // namespace scenesem
