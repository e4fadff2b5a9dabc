#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "scenesem/config.hpp"
#include "scenesem/error.hpp"
#include "scenesem/floorplan.hpp"
#include "scenesem/interactions.hpp"
#include "scenesem/navrules.hpp"
#include "scenesem/point_cloud.hpp"
#include "scenesem/report.hpp"
#include "scenesem/scene_io.hpp"
#include "scenesem/synthetic.hpp"

namespace fs = std::filesystem;
using namespace scenesem;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kNegative = 1;  // navcheck: some entry impossible; validate: violations
constexpr int kParse = 2;
constexpr int kConfig = 3;
constexpr int kRejected = 4;  // well-formed input the library refuses
constexpr int kUsage = 64;

struct Options {
  std::string config;
  std::string format = "text";
  std::string out = ".";
};

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(Errc::ParseError, "cannot write " + p.string());
  f << text;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::ParseError, "cannot read " + p.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, p.string() + ": " + e.what());
  }
}

std::optional<std::string> opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

int cmd_recognize(const Options& o, const std::string& scene_path, const std::string& only) {
  const Config cfg = resolve_config(opt(o.config));
  const SceneFile file = read_scene(fs::path(scene_path));
  const SceneRecording scene = to_recording(file, cfg.sth);
  std::vector<InteractionEvent> events;
  if (!scene.empty()) {
    validate_for_scene(cfg.patterns, scene);
    auto defs = builtin_defs(cfg.patterns, cfg.interactions);
    if (!only.empty()) {
      std::set<std::string> keep;
      std::stringstream ss(only);
      for (std::string name; std::getline(ss, name, ',');) keep.insert(name);
      for (auto& d : defs)
        if (!keep.contains(d.name)) d.report = false;
      for (const auto& k : keep) {
        bool known = false;
        for (const auto& d : defs) known = known || d.name == k;
        if (!known) throw Error(Errc::ConfigError, "--only: unknown interaction '" + k + "'");
      }
    }
    events = recognize(scene, defs, cfg.patterns, cfg.interactions);
  }
  const std::string doc = dump(events_document(events, cfg));
  const std::string text = events_text(events);
  write_file(fs::path(o.out) / "events.json", doc);
  write_file(fs::path(o.out) / "report.txt", text);
  if (o.format == "json") {
    std::cout << doc;
  } else {
    std::cout << events.size() << " interaction(s)\n";
    for (const auto& e : events)
      std::cout << "  " << e.label() << " [" << fixed3(e.interval.t1) << ", " << fixed3(e.interval.t2) << "]\n";
  }
  return kOk;
}

int cmd_floorplan(const Options& o, const std::string& cloud_path, const std::string& svg) {
  const Config cfg = resolve_config(opt(o.config));
  const PointCloud cloud = read_cloud(fs::path(cloud_path));
  const FloorplanResult r = extract_floorplan(cloud, cfg.floorplan);
  const std::string doc = dump(floorplan_document(r, cfg));
  write_file(fs::path(o.out) / "plan.json", doc);
  if (!svg.empty()) write_file(svg, debug_svg(r));
  std::cout << (o.format == "json" ? doc : floorplan_summary(r));
  return kOk;
}

int cmd_navcheck(const Options& o, const std::string& plan_path, const std::string& scene_path,
                 const std::string& path_path, double t) {
  const Config cfg = resolve_config(opt(o.config));
  FloorPlan plan = floorplan_from_json(read_json(plan_path));
  PlannedPath path = path_from_json(read_json(path_path));
  const SceneFile people = read_scene(fs::path(scene_path));
  const WorldState world = make_world(std::move(plan), people.frames, path, cfg.sth, cfg.patterns,
                                      cfg.interactions, cfg.floorplan.min_dim);
  const auto verdicts = plan_check(path, world, t);
  const std::string doc = dump(navcheck_document(verdicts, path, t, cfg));
  write_file(fs::path(o.out) / "verdicts.json", doc);
  std::cout << (o.format == "json" ? doc : navcheck_text(verdicts));
  for (const auto& v : verdicts)
    if (!v.possible) return kNegative;
  return kOk;
}

// Picks the schema from the extension and, for .json, from the content.
int cmd_validate(const std::string& file) {
  const fs::path p(file);
  std::ifstream in(p);
  if (!in) throw Error(Errc::ParseError, "cannot read " + file);
  const std::string ext = p.extension().string();
  std::vector<std::string> problems;
  if (ext == ".jsonl") {
    for (const auto& d : validate_scene(in, 20)) problems.push_back(d.to_string());
  } else if (ext == ".ply" || ext == ".xyz" || ext == ".txt") {
    try {
      const PointCloud c = read_cloud(in);
      if (c.size() == 0) problems.push_back("cloud has no points");
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
  } else {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      problems.push_back(e.what());
    }
    if (problems.empty()) {
      try {
        if (j.is_array() || (j.is_object() && j.contains("waypoints"))) {
          (void)path_from_json(j);
        } else if (j.is_object() && j.contains("structures")) {
          (void)floorplan_from_json(j);
        } else if (j.is_object() && j.contains("events")) {
          (void)events_from_document(j);
        } else {
          (void)config_from_json(j);
        }
      } catch (const Error& e) {
        problems.push_back(e.what());
      }
    }
  }
  if (problems.empty()) {
    std::cout << "OK\n";
    return kOk;
  }
  for (const auto& s : problems) std::cout << s << "\n";
  return kNegative;
}

int cmd_synth(const Options& o, const std::string& what, double angle_deg, double density, double sigma,
              std::uint64_t seed) {
  const fs::path out(o.out);
  auto scene_text = [](const SceneFile& s) {
    std::ostringstream ss;
    write_scene(ss, s);
    return ss.str();
  };
  if (what == "sandwich" || what == "approach-touch") {
    const auto fx = what == "sandwich" ? synth::sandwich() : synth::approach_touch();
    write_file(out / (what + ".jsonl"), scene_text(fx.scene));
  } else if (what.rfind("corridor-", 0) == 0) {
    const std::string kind = what.substr(9);
    std::optional<synth::Walker> w;
    for (auto c : {synth::Walker::empty, synth::Walker::same_direction, synth::Walker::opposing,
                   synth::Walker::loitering})
      if (synth::label(c) == kind) w = c;
    if (!w) throw Error(Errc::ConfigError, "unknown fixture '" + what + "'");
    const auto fx = synth::corridor_walk(*w);
    write_file(out / "plan.json", dump(to_json(fx.plan)));
    write_file(out / "path.json", dump(to_json(fx.path)));
    write_file(out / (what + ".jsonl"), scene_text(fx.scene));
  } else if (what == "room-corridor") {
    PointCloud c = synth::room_corridor_cloud(density, sigma, seed);
    if (angle_deg != 0.0) c = rotated(c, angle_deg * std::numbers::pi / 180.0);
    std::ostringstream ss;
    write_xyz(ss, c);
    write_file(out / "room_corridor.xyz", ss.str());
  } else {
    throw Error(Errc::ConfigError, "unknown fixture '" + what + "'");
  }
  return kOk;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::ParseError: return kParse;
    case Errc::ConfigError: return kConfig;
    default: return kRejected;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scenesem: qualitative spatio-temporal semantics for activity and indoor scan data"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "JSON config file (default: $SCENESEM_CONFIG)");
  app.add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", o.out, "output directory");

  std::string scene, cloud, svg, plan, path, file, what = "sandwich", only;
  double t = 0.0, angle = 0.0, density = 2000.0, sigma = 0.01;
  std::uint64_t seed = 7;

  auto* rec = app.add_subcommand("recognize", "recognize interactions in a JSON-lines scene");
  rec->add_option("scene", scene, "scene file (.jsonl)")->required();
  rec->add_option("--only", only, "comma-separated interactions to report");

  auto* fp = app.add_subcommand("floorplan", "extract rooms and corridors from a point cloud");
  fp->add_option("cloud", cloud, "PLY or XYZ file")->required();
  fp->add_option("--debug-svg", svg, "write an SVG of walls, lines and structures");

  auto* nav = app.add_subcommand("navcheck", "check enter actions along a planned path");
  nav->add_option("--plan", plan, "floor-plan JSON")->required();
  nav->add_option("--scene", scene, "people scene (.jsonl, map frame)")->required();
  nav->add_option("--path", path, "path JSON")->required();
  nav->add_option("--t", t, "query time (s)")->required();

  auto* val = app.add_subcommand("validate", "check a scene, cloud, plan, path, events or config file");
  val->add_option("file", file)->required();

  auto* syn = app.add_subcommand("synth", "write a synthetic fixture");
  syn->add_option("what", what,
                  "sandwich | approach-touch | corridor-{empty,same_direction,opposing,loitering} | room-corridor")
      ->required();
  syn->add_option("--angle", angle, "room-corridor: rotation in degrees");
  syn->add_option("--density", density, "room-corridor: points per square meter");
  syn->add_option("--sigma", sigma, "room-corridor: noise (m)");
  syn->add_option("--seed", seed, "room-corridor: random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*rec) return cmd_recognize(o, scene, only);
    if (*fp) return cmd_floorplan(o, cloud, svg);
    if (*nav) return cmd_navcheck(o, plan, scene, path, t);
    if (*val) return cmd_validate(file);
    if (*syn) return cmd_synth(o, what, angle, density, sigma, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  }
  return kUsage;
}
