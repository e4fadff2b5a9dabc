#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenesem/geometry.hpp"
#include "scenesem/sth.hpp"

namespace scenesem {

enum class Truth { no, yes, unknown };
std::string_view label(Truth t);

/// A named qualitative predicate over scene objects, e.g.
/// approaching("p1/hand_right", "bread").
struct Fluent {
  std::string name;
  std::vector<std::string> args;

  std::string to_string() const;
  friend bool operator==(const Fluent&, const Fluent&) = default;
  friend auto operator<=>(const Fluent&, const Fluent&) = default;
};

struct FluentInterval {
  Fluent fluent;
  TimeInterval interval;
  /// Truth value at each recorded frame inside the interval.
  std::vector<std::pair<double, Truth>> support;
};

/// Thresholds for the motion-pattern vocabulary. The patterns themselves are
/// qualitative; every number here is a tunable default.
struct PatternConfig {
  double d_touch = 0.05;                             // m, contact distance
  double eps_d = 0.01;                               // m, per-step distance tolerance
  double delta_min = 0.10;                           // m, minimum net approach
  double v_s = 0.05;                                 // m/s, stationarity speed bound
  double w_s = 0.3;                                  // s, velocity window
  double gap_max = 0.2;                              // s, bridged unknown gap
  double dur_min = 0.1;                              // s, minimum state interval
  double parallel_angle = std::numbers::pi / 6.0;    // rad
  double attach_distance = 0.05;                     // m
  double attach_velocity = 0.1;                      // m/s, velocity difference bound
  double attach_angle = std::numbers::pi / 6.0;      // rad
  double size_step_tol = 1e-4;                       // size units per step
  double size_rate_min = 0.01;                       // size units per second
  double vertical_step_tol = 0.01;                   // m
  double vertical_delta_min = 0.05;                  // m, net rise / fall
  double curvature_min = 0.10;                       // m, chord deviation
  double cyclic_eps = 0.10;                          // m, return-to-start radius
  double eps_rcc = 1e-6;                             // m, calculus boundary tolerance
};

/// Throws ConfigError when a threshold is non-positive.
void validate(const PatternConfig& cfg);
/// Throws ConfigError when dur_min is shorter than two frame periods of the scene.
void validate_for_scene(const PatternConfig& cfg, const SceneRecording& scene);

enum class PatternClass {
  state,       // evaluated per frame, merged into runs
  trend,       // monotone-within-tolerance sequences
  transition,  // qualitative state changes
  shape,       // trajectory geometry over the interval
};

struct PatternInfo {
  std::string_view name;
  int arity;
  PatternClass cls;
};

/// The full vocabulary, including the vertical-motion helpers used by
/// interaction definitions.
const std::vector<PatternInfo>& pattern_table();
/// Throws UnknownFluentName.
const PatternInfo& pattern_info(std::string_view name);

/// Instantaneous truth. Trend, transition and shape patterns hold at t when t
/// lies inside one of their detected intervals.
Truth holds_at(const Fluent& f, double t, const SceneRecording& scene, const PatternConfig& cfg);

/// Interval-level truth over the recorded frames inside `delta`.
bool holds_in(const Fluent& f, const TimeInterval& delta, const SceneRecording& scene,
              const PatternConfig& cfg);

/// Distances over delta never increase by more than eps_d per step, drop by
/// at least delta_min overall, and the window neither stalls at its ends nor
/// continues past first contact. Implies the weaker pairwise condition
/// distance(t_i) > distance(t_j) for some t_i before t_j.
bool eval_approaching(std::string_view oi, std::string_view oj, const TimeInterval& delta,
                      const SceneRecording& scene, const PatternConfig& cfg);

bool motion_pattern(std::string_view name, const std::vector<std::string>& args,
                    const TimeInterval& delta, const SceneRecording& scene, const PatternConfig& cfg);

/// Maximal intervals sorted by start time. State and trend intervals last at
/// least dur_min; transition intervals are the minimal windows spanning the
/// change.
std::vector<FluentInterval> detect_intervals(const Fluent& f, const SceneRecording& scene,
                                             const PatternConfig& cfg);

/// Memoizing front end for detect_intervals over one scene.
class FluentIndex {
 public:
  FluentIndex(const SceneRecording& scene, const PatternConfig& cfg) : scene_(scene), cfg_(cfg) {}

  const std::vector<FluentInterval>& intervals(const Fluent& f);
  const SceneRecording& scene() const noexcept { return scene_; }
  const PatternConfig& config() const noexcept { return cfg_; }

 private:
  const SceneRecording& scene_;
  PatternConfig cfg_;
  std::map<Fluent, std::vector<FluentInterval>> cache_;
};

/// Windowed velocity of a track around t (samples within +-w_s/2); nullopt
/// when fewer than two samples fall inside the window or t is unobserved.
std::optional<Vec3> windowed_velocity(const SceneRecording& scene, std::string_view id, double t,
                                      const PatternConfig& cfg);

}  // namespace scenesem
