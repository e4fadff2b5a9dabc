#include "scenesem/scene_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "scenesem/error.hpp"

namespace scenesem {

namespace {

using nlohmann::json;

struct Parser {
  std::size_t limit;
  std::vector<Diagnostic> diags;
  SceneFile out;
  std::map<std::string, std::string> class_of;  // object id -> class, for stability
  std::set<std::string> person_ids;
  std::optional<double> last_t;

  bool full() const { return diags.size() >= limit; }
  void fail(std::size_t line, std::string msg) {
    if (!full()) diags.push_back({line, std::move(msg)});
  }

  std::optional<Point3> point3(const json& v, std::size_t line, const std::string& what) {
    if (!v.is_array() || v.size() != 3) {
      fail(line, what + " must have 3 coordinates" +
                     (v.is_array() ? " (got " + std::to_string(v.size()) + ")" : std::string()));
      return std::nullopt;
    }
    Point3 p;
    double* c[3] = {&p.x, &p.y, &p.z};
    for (int k = 0; k < 3; ++k) {
      if (!v[k].is_number() || !std::isfinite(v[k].get<double>())) {
        fail(line, what + " has a non-numeric coordinate");
        return std::nullopt;
      }
      *c[k] = v[k].get<double>();
    }
    return p;
  }

  void meta(const json& m, std::size_t line) {
    if (!m.is_object()) return fail(line, "meta must be an object");
    for (const auto& [k, v] : m.items()) {
      if (k == "frame") {
        if (v == "map") out.frame = CoordinateFrame::map;
        else if (v == "sensor") out.frame = CoordinateFrame::sensor;
        else fail(line, "meta.frame must be \"map\" or \"sensor\"");
      } else if (k == "frame_rate") {
        if (!v.is_number() || !(v.get<double>() > 0.0)) fail(line, "meta.frame_rate must be a positive number");
        else out.frame_rate = v.get<double>();
      } else {
        fail(line, "unknown meta key '" + k + "'");
      }
    }
  }

  std::optional<BodyPose> person(const json& p, std::size_t line) {
    if (!p.is_object() || !p.contains("id") || !p["id"].is_string()) {
      fail(line, "person needs a string id");
      return std::nullopt;
    }
    BodyPose pose{p["id"].get<std::string>(), {}};
    const std::string who = "person " + pose.person_id;
    for (const auto& [k, v] : p.items())
      if (k != "id" && k != "joints" && k != "confidences") fail(line, who + ": unknown key '" + k + "'");
    if (class_of.contains(pose.person_id)) fail(line, who + ": id is already used by an object");
    if (!p.contains("joints") || !p["joints"].is_object()) {
      fail(line, who + ": joints must be an object");
      return std::nullopt;
    }
    bool ok = true;
    for (const auto& [name, v] : p["joints"].items()) {
      if (!is_joint_name(name)) {
        fail(line, who + ": unknown joint '" + name + "'");
        ok = false;
        continue;
      }
      auto pt = point3(v, line, who + " joint " + name);
      if (!pt) {
        ok = false;
        continue;
      }
      pose.joints[name] = {*pt, 1.0};
    }
    if (p.contains("confidences")) {
      const json& c = p["confidences"];
      if (!c.is_object()) {
        fail(line, who + ": confidences must be an object");
        ok = false;
      } else {
        for (const auto& [name, v] : c.items()) {
          auto it = pose.joints.find(name);
          if (it == pose.joints.end()) {
            fail(line, who + ": confidence for missing joint '" + name + "'");
            ok = false;
          } else if (!v.is_number() || v.get<double>() < 0.0 || v.get<double>() > 1.0) {
            fail(line, who + ": confidence of " + name + " must lie in [0, 1]");
            ok = false;
          } else {
            it->second.confidence = v.get<double>();
          }
        }
      }
    }
    if (!ok) return std::nullopt;
    person_ids.insert(pose.person_id);
    return pose;
  }

  std::optional<ObjectObservation> object(const json& o, std::size_t line) {
    if (!o.is_object() || !o.contains("id") || !o["id"].is_string()) {
      fail(line, "object needs a string id");
      return std::nullopt;
    }
    ObjectObservation obs;
    obs.id = o["id"].get<std::string>();
    const std::string who = "object " + obs.id;
    if (!o.contains("class") || !o["class"].is_string()) {
      fail(line, who + ": class must be a string");
      return std::nullopt;
    }
    obs.class_label = o["class"].get<std::string>();
    if (person_ids.contains(obs.id)) fail(line, who + ": id is already used by a person");
    if (auto it = class_of.find(obs.id); it != class_of.end() && it->second != obs.class_label)
      fail(line, who + ": class changed from '" + it->second + "' to '" + obs.class_label + "'");
    int geoms = 0;
    bool ok = true;
    for (const auto& [k, v] : o.items()) {
      if (k == "id" || k == "class") continue;
      if (k == "kind") {
        auto kind = v.is_string() ? parse_object_kind(v.get<std::string>()) : std::nullopt;
        if (!kind || *kind == ObjectKind::body_part || *kind == ObjectKind::person) {
          fail(line, who + ": kind must be object, robot or floorplan_structure");
          ok = false;
        } else {
          obs.kind = *kind;
        }
      } else if (k == "position") {
        ++geoms;
        if (auto p = point3(v, line, who + " position")) obs.entity = *p;
        else ok = false;
      } else if (k == "aabb") {
        ++geoms;
        if (!v.is_array() || v.size() != 2) {
          fail(line, who + ": aabb must be [[x0,y0,z0],[x1,y1,z1]]");
          ok = false;
          continue;
        }
        auto lo = point3(v[0], line, who + " aabb min");
        auto hi = point3(v[1], line, who + " aabb max");
        if (!lo || !hi) {
          ok = false;
        } else if (!(lo->x < hi->x && lo->y < hi->y && lo->z < hi->z)) {
          fail(line, who + ": aabb min must be below max on every axis");
          ok = false;
        } else {
          obs.entity = AABox::cuboid(*lo, *hi);
        }
      } else if (k == "polygon") {
        ++geoms;
        std::vector<Point2> ring;
        bool shape_ok = v.is_array() && v.size() >= 3;
        if (shape_ok)
          for (const auto& q : v) {
            if (!q.is_array() || q.size() != 2 || !q[0].is_number() || !q[1].is_number()) {
              shape_ok = false;
              break;
            }
            ring.push_back({q[0].get<double>(), q[1].get<double>()});
          }
        if (!shape_ok) {
          fail(line, who + ": polygon must be at least three [x, y] pairs");
          ok = false;
          continue;
        }
        try {
          obs.entity = validate_polygon(ring);
        } catch (const Error& e) {
          fail(line, who + ": " + e.what());
          ok = false;
        }
      } else {
        fail(line, who + ": unknown key '" + k + "'");
        ok = false;
      }
    }
    if (geoms != 1) {
      fail(line, who + ": needs exactly one of aabb, position, polygon");
      return std::nullopt;
    }
    if (!ok) return std::nullopt;
    class_of.emplace(obs.id, obs.class_label);
    return obs;
  }

  void frame(const json& j, std::size_t line) {
    if (!j.contains("t") || !j["t"].is_number() || !std::isfinite(j["t"].get<double>()))
      return fail(line, "frame needs a numeric t");
    const double t = j["t"].get<double>();
    if (last_t && t < *last_t) {
      fail(line, "t decreases from " + std::to_string(*last_t) + " to " + std::to_string(t));
      return;
    }
    for (const auto& [k, v] : j.items())
      if (k != "t" && k != "persons" && k != "objects") fail(line, "unknown frame key '" + k + "'");

    const bool merge = last_t && t == *last_t;
    if (!merge) out.frames.push_back(SceneFrame{t, {}, {}});
    last_t = t;
    SceneFrame& f = out.frames.back();
    std::set<std::string> seen;
    for (const auto& p : f.persons) seen.insert(p.person_id);
    for (const auto& o : f.objects) seen.insert(o.id);

    if (j.contains("persons")) {
      if (!j["persons"].is_array()) {
        fail(line, "persons must be an array");
      } else {
        for (const auto& p : j["persons"]) {
          auto pose = person(p, line);
          if (!pose) continue;
          if (!seen.insert(pose->person_id).second) {
            fail(line, "id " + pose->person_id + " appears twice at t=" + std::to_string(t));
            continue;
          }
          f.persons.push_back(std::move(*pose));
        }
      }
    }
    if (j.contains("objects")) {
      if (!j["objects"].is_array()) {
        fail(line, "objects must be an array");
      } else {
        for (const auto& o : j["objects"]) {
          auto obs = object(o, line);
          if (!obs) continue;
          if (!seen.insert(obs->id).second) {
            fail(line, "id " + obs->id + " appears twice at t=" + std::to_string(t));
            continue;
          }
          f.objects.push_back(std::move(*obs));
        }
      }
    }
  }

  void run(std::istream& in) {
    std::string text;
    std::size_t line = 0;
    bool any = false;
    while (!full() && std::getline(in, text)) {
      ++line;
      if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j;
      try {
        j = json::parse(text);
      } catch (const json::parse_error& e) {
        fail(line, std::string("malformed JSON: ") + e.what());
        any = true;
        continue;
      }
      if (!j.is_object()) {
        fail(line, "expected a JSON object");
      } else if (j.contains("meta")) {
        if (any) fail(line, "meta must be the first line");
        if (j.size() != 1) fail(line, "meta line must contain only \"meta\"");
        meta(j["meta"], line);
      } else {
        frame(j, line);
      }
      any = true;
    }
  }
};

}  // namespace

std::string Diagnostic::to_string() const {
  return line ? "line " + std::to_string(line) + ": " + message : message;
}

SceneFile read_scene(std::istream& in) {
  Parser p{1, {}, {}, {}, {}, {}};
  p.run(in);
  if (!p.diags.empty()) throw Error(Errc::ParseError, p.diags.front().to_string());
  return std::move(p.out);
}

SceneFile read_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path.string());
  return read_scene(in);
}

std::vector<Diagnostic> validate_scene(std::istream& in, std::size_t limit) {
  Parser p{limit, {}, {}, {}, {}, {}};
  p.run(in);
  return std::move(p.diags);
}

nlohmann::ordered_json frame_to_json(const SceneFrame& f) {
  nlohmann::ordered_json j;
  j["t"] = f.t;
  if (!f.persons.empty()) {
    j["persons"] = nlohmann::ordered_json::array();
    for (const auto& p : f.persons) {
      nlohmann::ordered_json pj;
      pj["id"] = p.person_id;
      pj["joints"] = nlohmann::ordered_json::object();
      nlohmann::ordered_json conf = nlohmann::ordered_json::object();
      for (const auto& [name, obs] : p.joints) {
        pj["joints"][name] = {obs.position.x, obs.position.y, obs.position.z};
        if (obs.confidence != 1.0) conf[name] = obs.confidence;
      }
      if (!conf.empty()) pj["confidences"] = conf;
      j["persons"].push_back(std::move(pj));
    }
  }
  if (!f.objects.empty()) {
    j["objects"] = nlohmann::ordered_json::array();
    for (const auto& o : f.objects) {
      nlohmann::ordered_json oj;
      oj["id"] = o.id;
      oj["class"] = o.class_label;
      if (o.kind != ObjectKind::object) oj["kind"] = label(o.kind);
      if (const auto* b = std::get_if<AABox>(&o.entity)) {
        oj["aabb"] = {{b->min.x, b->min.y, b->min.z}, {b->max.x, b->max.y, b->max.z}};
      } else if (const auto* q = std::get_if<Point3>(&o.entity)) {
        oj["position"] = {q->x, q->y, q->z};
      } else if (const auto* g = std::get_if<Polygon2>(&o.entity)) {
        oj["polygon"] = nlohmann::ordered_json::array();
        for (const auto& v : g->vertices()) oj["polygon"].push_back({v.x, v.y});
      } else {
        throw Error(Errc::UnsupportedEntityKind, "object " + o.id + " cannot be written to a scene file");
      }
      j["objects"].push_back(std::move(oj));
    }
  }
  return j;
}

void write_scene(std::ostream& out, const SceneFile& scene) {
  nlohmann::ordered_json meta;
  meta["frame"] = scene.frame == CoordinateFrame::map ? "map" : "sensor";
  if (scene.frame_rate) meta["frame_rate"] = *scene.frame_rate;
  out << nlohmann::ordered_json{{"meta", meta}}.dump() << '\n';
  for (const auto& f : scene.frames) out << frame_to_json(f).dump() << '\n';
}

SceneRecording to_recording(const SceneFile& scene, const SthConfig& cfg, std::vector<SceneTrack> static_tracks) {
  SceneRecording built = build_scene(scene.frames, cfg, std::move(static_tracks), scene.frame);
  if (!scene.frame_rate) return built;
  std::vector<SceneTrack> tracks = built.tracks();
  return SceneRecording(std::move(tracks), built.frame(), scene.frame_rate);
}

}  // namespace scenesem
