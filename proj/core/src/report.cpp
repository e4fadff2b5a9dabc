#include "scenesem/report.hpp"

#include <cstdio>

#include "scenesem/error.hpp"

namespace scenesem {

std::string fixed3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

nlohmann::ordered_json events_document(const std::vector<InteractionEvent>& events, const Config& cfg) {
  nlohmann::ordered_json doc;
  doc["config"] = to_json(cfg);
  doc["events"] = nlohmann::ordered_json::array();
  for (const auto& e : events) doc["events"].push_back(to_json(e));
  return doc;
}

std::vector<InteractionEvent> events_from_document(const nlohmann::ordered_json& doc) {
  if (!doc.is_object() || !doc.contains("events") || !doc["events"].is_array())
    throw Error(Errc::ParseError, "events document needs an \"events\" array");
  std::vector<InteractionEvent> out;
  for (const auto& e : doc["events"]) out.push_back(event_from_json(e));
  return out;
}

std::string events_text(const std::vector<InteractionEvent>& events) {
  if (events.empty()) return "no interactions recognized\n";
  std::string s;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i) s += "\n";
    s += grounding_report(events[i]);
  }
  return s;
}

nlohmann::ordered_json floorplan_document(const FloorplanResult& r, const Config& cfg) {
  nlohmann::ordered_json doc = to_json(r.plan);
  nlohmann::ordered_json sum;
  sum["input_points"] = r.input_points;
  sum["samples"] = r.samples;
  sum["planes"] = r.planes;
  sum["walls"] = r.walls.size();
  sum["lines"] = r.lines.size();
  doc["summary"] = sum;
  doc["lines"] = nlohmann::ordered_json::array();
  for (const auto& l : r.lines) {
    nlohmann::ordered_json lj;
    lj["point"] = {l.point.x, l.point.y};
    lj["dir"] = {l.dir.x, l.dir.y};
    lj["members"] = l.members;
    lj["residual"] = l.residual;
    doc["lines"].push_back(std::move(lj));
  }
  doc["config"] = to_json(cfg);
  return doc;
}

std::string floorplan_summary(const FloorplanResult& r) {
  std::size_t rooms = 0, corridors = 0;
  for (const auto& s : r.plan.structures) (s.type == StructureType::room ? rooms : corridors)++;
  std::string out = "points: " + std::to_string(r.input_points) + " (" + std::to_string(r.samples) +
                    " after downsampling)\n";
  out += "planes found: " + std::to_string(r.planes) + "\n";
  out += "walls kept: " + std::to_string(r.walls.size()) + " on " + std::to_string(r.lines.size()) + " lines\n";
  out += "structures: " + std::to_string(rooms) + " room(s), " + std::to_string(corridors) + " corridor(s)\n";
  for (const auto& s : r.plan.structures) {
    out += "  " + s.id + " " + std::string(label(s.type)) + " " + fixed3(s.length()) + " x " + fixed3(s.width()) +
           " m, coverage " + fixed3(s.coverage) + "\n";
  }
  for (const auto& [a, b] : r.plan.adjacency) out += "  adjacent: " + a + " - " + b + "\n";
  for (const auto& w : r.plan.warnings) out += "warning: " + w + "\n";
  return out;
}

nlohmann::ordered_json navcheck_document(const std::vector<NavVerdict>& verdicts, const PlannedPath& path, double t,
                                         const Config& cfg) {
  nlohmann::ordered_json doc;
  doc["t"] = t;
  doc["path"] = to_json(path);
  bool all = true;
  doc["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : verdicts) {
    all = all && v.possible;
    doc["verdicts"].push_back(to_json(v));
  }
  doc["all_possible"] = all;
  doc["config"] = to_json(cfg);
  return doc;
}

std::string navcheck_text(const std::vector<NavVerdict>& verdicts) {
  if (verdicts.empty()) return "path crosses no structure\n";
  std::string s;
  for (const auto& v : verdicts)
    s += v.action.name + "(" + v.action.target + ") at t=" + fixed3(v.t) + ": " +
         (v.possible ? "possible" : "impossible") + " [" + v.rule + "] " + v.explanation + "\n";
  return s;
}

}  // namespace scenesem
