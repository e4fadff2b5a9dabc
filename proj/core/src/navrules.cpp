#include "scenesem/navrules.hpp"

#include <algorithm>
#include <cmath>

#include "scenesem/error.hpp"

namespace scenesem {

namespace {

constexpr double kTimeEps = 1e-6;

// Parameter range of p + s (q - p), s in [0, 1], inside the convex CCW ring.
std::optional<std::pair<double, double>> clip(Point2 p, Point2 q, const std::array<Point2, 4>& ring) {
  double lo = 0.0, hi = 1.0;
  const Vec2 d = q - p;
  for (int k = 0; k < 4; ++k) {
    const Point2 a = ring[k], b = ring[(k + 1) % 4];
    const Vec2 e = b - a;
    // Inside means cross(e, x - a) >= 0.
    const double f0 = cross(e, p - a) + kGeomEps * norm(e);
    const double fd = cross(e, d);
    if (std::abs(fd) < 1e-15) {
      if (f0 < 0.0) return std::nullopt;
      continue;
    }
    const double s = -f0 / fd;
    if (fd > 0.0) lo = std::max(lo, s);
    else hi = std::min(hi, s);
    if (lo > hi) return std::nullopt;
  }
  return std::pair{lo, hi};
}

// Arc-length position of the first point of the polyline inside the ring.
std::optional<double> first_entry(const std::vector<Point2>& w, const std::array<Point2, 4>& ring) {
  double walked = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const double len = norm(w[i + 1] - w[i]);
    if (auto c = clip(w[i], w[i + 1], ring)) return walked + c->first * len;
    walked += len;
  }
  if (w.size() == 1 && locate_in_ring(w[0], ring) != PointLocation::outside) return 0.0;
  return std::nullopt;
}

std::vector<Point2> positions_in(const SceneRecording& scene, const std::string& id, const TimeInterval& iv) {
  std::vector<Point2> out;
  for (const auto& s : scene.track(id).history.samples())
    if (iv.contains(s.t, kTimeEps)) out.push_back(xy(centroid(s.entity)));
  return out;
}

std::string direction_word(std::optional<int> d) {
  if (!d) return "no clear direction";
  return *d > 0 ? "+major axis" : "-major axis";
}

}  // namespace

void validate(const PlannedPath& path) {
  if (path.waypoints.size() < 2) throw Error(Errc::InvalidEntity, "planned path needs at least two waypoints");
  for (const auto& p : path.waypoints)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(Errc::InvalidEntity, "non-finite waypoint");
  if (!path.times.empty()) {
    if (path.times.size() != path.waypoints.size())
      throw Error(Errc::InvalidEntity, "path times must match the waypoints one to one");
    for (std::size_t i = 1; i < path.times.size(); ++i)
      if (!(path.times[i] > path.times[i - 1])) throw Error(Errc::InvalidEntity, "path times must increase");
  }
}

PlannedPath path_from_json(const nlohmann::json& j) {
  PlannedPath p;
  try {
    const nlohmann::json* pts = &j;
    if (j.is_object()) {
      p.robot_id = j.value("robot", p.robot_id);
      pts = &j.at("waypoints");
      if (j.contains("times")) p.times = j.at("times").get<std::vector<double>>();
      for (const auto& [k, v] : j.items())
        if (k != "robot" && k != "waypoints" && k != "times" && k != "config")
          throw Error(Errc::ParseError, "unknown path key '" + k + "'");
    }
    if (!pts->is_array()) throw Error(Errc::ParseError, "path must be an array of [x, y] pairs");
    for (const auto& w : *pts) {
      if (!w.is_array() || w.size() != 2) throw Error(Errc::ParseError, "waypoint must be [x, y]");
      p.waypoints.push_back({w[0].get<double>(), w[1].get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed path: ") + e.what());
  }
  try {
    validate(p);
  } catch (const Error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return p;
}

nlohmann::ordered_json to_json(const PlannedPath& path) {
  nlohmann::ordered_json j;
  j["robot"] = path.robot_id;
  j["waypoints"] = nlohmann::ordered_json::array();
  for (const auto& w : path.waypoints) j["waypoints"].push_back({w.x, w.y});
  if (!path.times.empty()) j["times"] = path.times;
  return j;
}

WorldState make_world(FloorPlan plan, std::span<const SceneFrame> people, PlannedPath path, const SthConfig& sth,
                      const PatternConfig& patterns, const InteractionConfig& interactions, double min_dim) {
  validate(path);
  WorldState w{std::move(plan), {}, std::move(path), {}, min_dim};
  w.scene = build_scene(people, sth, structure_tracks(w.plan), CoordinateFrame::map);
  std::vector<InteractionDef> defs;
  for (auto& d : builtin_defs(patterns, interactions))
    if (d.name == "moves_into" || d.name == "passes") defs.push_back(std::move(d));
  // moves_into only feeds passes here.
  defs.front().report = false;
  w.events = recognize(w.scene, defs, patterns, interactions);
  return w;
}

std::optional<int> transit_direction(const std::vector<Point2>& track, const FloorPlanStructure& fs, double min_dim) {
  const Vec2 axis = fs.major_axis;
  bool touched = false;
  double along = 0.0;
  for (std::size_t i = 0; i + 1 < track.size(); ++i) {
    auto c = clip(track[i], track[i + 1], fs.corners);
    if (!c) continue;
    touched = true;
    along += (c->second - c->first) * dot(track[i + 1] - track[i], axis);
  }
  if (!touched && !track.empty()) {
    for (const auto& p : track) touched = touched || locate_in_ring(p, fs.corners) != PointLocation::outside;
  }
  if (!touched) throw Error(Errc::TrackOutsideStructure, "track never enters structure " + fs.id);
  if (std::abs(along) < min_dim / 4.0) return std::nullopt;
  return along > 0.0 ? 1 : -1;
}

NavVerdict poss_at(const ControlAction& action, double t, const WorldState& world) {
  const FloorPlanStructure* fs = world.plan.find(action.target);
  if (!fs) throw Error(Errc::UnknownStructure, "no structure named '" + action.target + "'");
  NavVerdict v{action, t};
  if (fs->type != StructureType::corridor) {
    v.possible = true;
    v.rule = "not_corridor";
    v.explanation = action.target + " is a " + std::string(label(fs->type)) + "; entry is unrestricted";
    return v;
  }

  for (const auto& id : world.scene.ids_of_kind(ObjectKind::person)) {
    const auto& h = world.scene.track(id).history;
    if (!h.covers(t)) continue;
    auto where = locate(xy(position(h, t)), world.plan);
    if (where && *where == action.target) v.persons_inside.push_back(id);
  }
  if (v.persons_inside.empty()) {
    v.possible = true;
    v.rule = "no_person";
    v.explanation = "nobody is in " + action.target + " at t";
    return v;
  }

  try {
    v.robot_direction = transit_direction(world.path.waypoints, *fs, world.min_dim);
  } catch (const Error&) {
    v.robot_direction = std::nullopt;
  }

  for (const auto& p : v.persons_inside) {
    const InteractionEvent* pass = nullptr;
    for (const auto& e : world.events) {
      if (e.name != "passes" || e.participant("person") != p || e.participant("structure") != action.target)
        continue;
      if (e.interval.contains(t, kTimeEps)) {
        pass = &e;
        break;
      }
    }
    if (!pass) {
      v.blockers.push_back({p, "is in " + action.target + " without passing through it"});
      continue;
    }
    std::optional<int> dir;
    try {
      dir = transit_direction(positions_in(world.scene, p, pass->interval), *fs, world.min_dim);
    } catch (const Error&) {
    }
    if (!dir || !v.robot_direction || *dir != *v.robot_direction) {
      v.blockers.push_back({p, "passes " + action.target + " towards " + direction_word(dir) + ", robot heads " +
                                   direction_word(v.robot_direction)});
    }
  }

  v.possible = v.blockers.empty();
  if (v.possible) {
    v.rule = "same_direction";
    v.explanation = "everyone in " + action.target + " passes in the robot's direction";
  } else {
    v.rule = "blocked";
    v.explanation = action.target + " is blocked by";
    for (std::size_t i = 0; i < v.blockers.size(); ++i)
      v.explanation += (i ? ", " : " ") + v.blockers[i].person + " (" + v.blockers[i].reason + ")";
  }
  return v;
}

std::vector<NavVerdict> plan_check(const PlannedPath& path, const WorldState& world, double t) {
  validate(path);
  std::vector<std::pair<double, const FloorPlanStructure*>> crossed;
  for (const auto& s : world.plan.structures)
    if (auto at = first_entry(path.waypoints, s.corners)) crossed.emplace_back(*at, &s);
  std::stable_sort(crossed.begin(), crossed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second->id < b.second->id;
  });
  WorldState local{world.plan, world.scene, path, world.events, world.min_dim};
  std::vector<NavVerdict> out;
  for (const auto& [at, s] : crossed) out.push_back(poss_at({"enter", s->id, path.robot_id}, t, local));
  return out;
}

nlohmann::ordered_json to_json(const NavVerdict& v) {
  nlohmann::ordered_json j;
  j["action"] = v.action.name;
  j["target"] = v.action.target;
  j["agent"] = v.action.agent;
  j["t"] = v.t;
  j["verdict"] = v.possible ? "possible" : "impossible";
  j["rule"] = v.rule;
  j["explanation"] = v.explanation;
  j["persons_inside"] = v.persons_inside;
  j["blockers"] = nlohmann::ordered_json::array();
  for (const auto& b : v.blockers) j["blockers"].push_back({{"person", b.person}, {"reason", b.reason}});
  j["robot_direction"] = v.robot_direction ? nlohmann::ordered_json(*v.robot_direction) : nlohmann::ordered_json();
  return j;
}

}  // namespace scenesem
