#include "scenesem/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "scenesem/error.hpp"

namespace scenesem {

namespace {

// Single table of every configurable field, shared by parsing and echo.
template <class C, class F>
void each_field(C& c, F&& f) {
  f("calculi", "eps_rcc", c.calculi.eps_rcc);
  f("calculi", "eps_t", c.calculi.eps_t);
  f("calculi", "theta_same", c.calculi.theta_same);
  f("calculi", "theta_face", c.calculi.theta_face);
  f("calculi", "d_adj", c.calculi.qdc.d_adj);
  f("calculi", "d_near", c.calculi.qdc.d_near);
  f("calculi", "rho", c.calculi.qdc.rho);

  f("sth", "confidence_min", c.sth.confidence_min);
  f("sth", "eps_move", c.sth.eps_move);

  f("patterns", "d_touch", c.patterns.d_touch);
  f("patterns", "eps_d", c.patterns.eps_d);
  f("patterns", "delta_min", c.patterns.delta_min);
  f("patterns", "v_s", c.patterns.v_s);
  f("patterns", "w_s", c.patterns.w_s);
  f("patterns", "gap_max", c.patterns.gap_max);
  f("patterns", "dur_min", c.patterns.dur_min);
  f("patterns", "parallel_angle", c.patterns.parallel_angle);
  f("patterns", "attach_distance", c.patterns.attach_distance);
  f("patterns", "attach_velocity", c.patterns.attach_velocity);
  f("patterns", "attach_angle", c.patterns.attach_angle);
  f("patterns", "size_step_tol", c.patterns.size_step_tol);
  f("patterns", "size_rate_min", c.patterns.size_rate_min);
  f("patterns", "vertical_step_tol", c.patterns.vertical_step_tol);
  f("patterns", "vertical_delta_min", c.patterns.vertical_delta_min);
  f("patterns", "curvature_min", c.patterns.curvature_min);
  f("patterns", "cyclic_eps", c.patterns.cyclic_eps);

  f("interactions", "max_gap", c.interactions.max_gap);
  f("interactions", "z_lift", c.interactions.z_lift);

  f("floorplan", "k_neighbors", c.floorplan.k_neighbors);
  f("floorplan", "angle_tol_deg", c.floorplan.angle_tol_deg);
  f("floorplan", "dist_tol", c.floorplan.dist_tol);
  f("floorplan", "min_inliers", c.floorplan.min_inliers);
  f("floorplan", "vertical_tol_deg", c.floorplan.vertical_tol_deg);
  f("floorplan", "min_height", c.floorplan.min_height);
  f("floorplan", "ceiling_z", c.floorplan.ceiling_z);
  f("floorplan", "ceiling_gap", c.floorplan.ceiling_gap);
  f("floorplan", "eps_angle_deg", c.floorplan.eps_angle_deg);
  f("floorplan", "eps_offset", c.floorplan.eps_offset);
  f("floorplan", "min_pts", c.floorplan.min_pts);
  f("floorplan", "min_coverage", c.floorplan.min_coverage);
  f("floorplan", "min_dim", c.floorplan.min_dim);
  f("floorplan", "corridor_aspect", c.floorplan.corridor_aspect);
  f("floorplan", "perpendicular_tol_deg", c.floorplan.perpendicular_tol_deg);
  f("floorplan", "downsample", c.floorplan.downsample);
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(Errc::ConfigError, where + ": " + what);
}

void assign(double& out, const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) bad(where, "expected a number");
  out = v.get<double>();
}
void assign(std::size_t& out, const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(where, "expected a non-negative integer");
  out = v.get<std::size_t>();
}
void assign(bool& out, const nlohmann::json& v, const std::string& where) {
  if (!v.is_boolean()) bad(where, "expected true or false");
  out = v.get<bool>();
}
void assign(std::optional<double>& out, const nlohmann::json& v, const std::string& where) {
  if (v.is_null()) {
    out.reset();
    return;
  }
  double d = 0.0;
  assign(d, v, where);
  out = d;
}

nlohmann::ordered_json echo(const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); }
template <class T>
nlohmann::ordered_json echo(const T& v) {
  return v;
}

void share(Config& c) {
  c.patterns.eps_rcc = c.calculi.eps_rcc;
  c.interactions.eps_t = c.calculi.eps_t;
}

}  // namespace

void validate(const Config& c) {
  auto pos = [](const char* key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) bad(key, "must be positive");
  };
  if (!(c.calculi.eps_rcc >= 0.0) || !std::isfinite(c.calculi.eps_rcc)) bad("calculi.eps_rcc", "must be non-negative");
  if (!(c.calculi.eps_t >= 0.0) || !std::isfinite(c.calculi.eps_t)) bad("calculi.eps_t", "must be non-negative");
  pos("calculi.theta_same", c.calculi.theta_same);
  pos("calculi.theta_face", c.calculi.theta_face);
  pos("calculi.d_adj", c.calculi.qdc.d_adj);
  pos("calculi.d_near", c.calculi.qdc.d_near);
  if (c.calculi.qdc.d_near <= c.calculi.qdc.d_adj) bad("calculi.d_near", "must exceed d_adj");
  if (!(c.calculi.qdc.rho > 1.0)) bad("calculi.rho", "must exceed 1");
  if (!(c.sth.confidence_min >= 0.0 && c.sth.confidence_min <= 1.0)) bad("sth.confidence_min", "must lie in [0, 1]");
  pos("sth.eps_move", c.sth.eps_move);
  validate(c.patterns);
  pos("interactions.max_gap", c.interactions.max_gap);
  pos("interactions.z_lift", c.interactions.z_lift);
  validate(c.floorplan);
}

Config config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("config", "expected a JSON object");
  static const std::set<std::string> sections{"calculi", "sth", "patterns", "interactions", "floorplan"};
  Config c;
  for (const auto& [sec, body] : j.items()) {
    if (!sections.contains(sec)) bad(sec, "unknown config section");
    if (!body.is_object()) bad(sec, "expected an object");
    for (const auto& [key, value] : body.items()) {
      bool found = false;
      each_field(c, [&](std::string_view s, std::string_view k, auto& field) {
        if (s == sec && k == key) {
          assign(field, value, sec + "." + key);
          found = true;
        }
      });
      if (!found) bad(sec + "." + key, "unknown key");
    }
  }
  share(c);
  validate(c);
  return c;
}

nlohmann::ordered_json to_json(const Config& c) {
  nlohmann::ordered_json j;
  each_field(c, [&](std::string_view s, std::string_view k, const auto& field) {
    j[std::string(s)][std::string(k)] = echo(field);
  });
  return j;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad(path.string(), "cannot read config file");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path.string(), std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

Config resolve_config(const std::optional<std::string>& path) {
  if (path && !path->empty()) return load_config(*path);
  if (const char* env = std::getenv("SCENESEM_CONFIG"); env && *env) return load_config(env);
  Config c;
  share(c);
  return c;
}

}  // namespace scenesem
