#include "scenesem/fluents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scenesem/calculi.hpp"
#include "scenesem/error.hpp"

namespace scenesem {

namespace {

constexpr double kTimeEps = 1e-9;

const std::vector<PatternInfo> kPatterns = {
    {"touching", 2, PatternClass::state},        {"discrete", 2, PatternClass::state},
    {"overlapping", 2, PatternClass::state},     {"inside", 2, PatternClass::state},
    {"moving", 1, PatternClass::state},          {"stationary", 1, PatternClass::state},
    {"parallel", 2, PatternClass::state},        {"attached", 2, PatternClass::state},
    {"approaching", 2, PatternClass::trend},     {"moving_away", 2, PatternClass::trend},
    {"growing", 1, PatternClass::trend},         {"shrinking", 1, PatternClass::trend},
    {"moving_up", 1, PatternClass::trend},       {"moving_down", 1, PatternClass::trend},
    {"moving_into", 2, PatternClass::transition}, {"moving_out", 2, PatternClass::transition},
    {"merging", 2, PatternClass::transition},    {"splitting", 2, PatternClass::transition},
    {"curved", 1, PatternClass::shape},          {"cyclic", 1, PatternClass::shape},
};

const PatternInfo& checked(const Fluent& f, const SceneRecording& scene) {
  const PatternInfo& info = pattern_info(f.name);
  if (static_cast<int>(f.args.size()) != info.arity)
    throw Error(Errc::ArityMismatch, f.name + " expects " + std::to_string(info.arity) +
                                         " argument(s), got " + std::to_string(f.args.size()));
  for (const auto& a : f.args) (void)scene.track(a);
  return info;
}

// Entity of `id` at time t: the recorded sample at frame times, an
// interpolated one between samples, nullopt when unobserved.
std::optional<SpatialEntity> observe(const SceneRecording& scene, std::string_view id, double t) {
  if (auto k = scene.frame_index(t)) {
    const SpatialEntity* e = scene.at_frame(id, *k);
    if (!e) return std::nullopt;
    return *e;
  }
  const auto& h = scene.track(id).history;
  if (!h.covers(t)) return std::nullopt;
  return h.entity_at(t);
}

bool is_observed(const SceneRecording& scene, std::string_view id, double t) {
  if (auto k = scene.frame_index(t)) return scene.at_frame(id, *k) != nullptr;
  return scene.track(id).history.covers(t);
}

Truth from_bool(bool b) { return b ? Truth::yes : Truth::no; }

Truth instant(const Fluent& f, double t, const SceneRecording& scene, const PatternConfig& cfg) {
  const std::string& n = f.name;
  if (n == "moving" || n == "stationary") {
    auto v = windowed_velocity(scene, f.args[0], t, cfg);
    if (!v) return Truth::unknown;
    bool moving = norm(*v) > cfg.v_s;
    return from_bool(n == "moving" ? moving : !moving);
  }
  if (n == "parallel") {
    auto va = windowed_velocity(scene, f.args[0], t, cfg);
    auto vb = windowed_velocity(scene, f.args[1], t, cfg);
    if (!va || !vb) return Truth::unknown;
    if (norm(*va) <= cfg.v_s || norm(*vb) <= cfg.v_s) return Truth::no;
    return from_bool(angle_between(*va, *vb) <= cfg.parallel_angle);
  }

  auto ea = observe(scene, f.args[0], t);
  auto eb = observe(scene, f.args[1], t);
  if (!ea || !eb) return Truth::unknown;

  if (n == "touching") return from_bool(distance(*ea, *eb) <= cfg.d_touch);
  if (n == "attached") {
    auto va = windowed_velocity(scene, f.args[0], t, cfg);
    auto vb = windowed_velocity(scene, f.args[1], t, cfg);
    if (!va || !vb) return Truth::unknown;
    if (distance(*ea, *eb) > cfg.attach_distance) return Truth::no;
    if (norm(*va - *vb) >= cfg.attach_velocity) return Truth::no;
    if (norm(*va) > cfg.v_s && norm(*vb) > cfg.v_s && angle_between(*va, *vb) > cfg.attach_angle)
      return Truth::no;
    return Truth::yes;
  }

  Rcc8 r = rcc8_extended(*ea, *eb, cfg.eps_rcc);
  if (n == "discrete") return from_bool(rcc5_coarsen(r) == Rcc5::dr);
  if (n == "overlapping") return from_bool(r == Rcc8::po);
  if (n == "inside") return from_bool(r == Rcc8::tpp || r == Rcc8::ntpp || r == Rcc8::eq);
  throw Error(Errc::UnknownFluentName, n);
}

// Frame index range [lo, hi) whose times fall inside delta.
std::pair<std::size_t, std::size_t> frames_in(const SceneRecording& scene, const TimeInterval& d) {
  const auto& ft = scene.frame_times();
  auto lo = std::lower_bound(ft.begin(), ft.end(), d.t1 - kTimeEps);
  auto hi = std::upper_bound(ft.begin(), ft.end(), d.t2 + kTimeEps);
  return {static_cast<std::size_t>(lo - ft.begin()), static_cast<std::size_t>(hi - ft.begin())};
}

// Known per-frame values of one quantity.
struct Series {
  std::vector<std::size_t> frame;
  std::vector<double> t;
  std::vector<double> v;  // scalar quantity (distance, size, height)
  std::vector<int> s;     // qualitative state
  std::vector<Point3> p;  // position
  std::size_t size() const { return t.size(); }
};

Series collect(const Fluent& f, const SceneRecording& scene, const PatternConfig& cfg,
               std::size_t lo, std::size_t hi) {
  Series out;
  const std::string& n = f.name;
  for (std::size_t k = lo; k < hi; ++k) {
    const SpatialEntity* a = scene.at_frame(f.args[0], k);
    if (!a) continue;
    const SpatialEntity* b = f.args.size() > 1 ? scene.at_frame(f.args[1], k) : nullptr;
    if (f.args.size() > 1 && !b) continue;

    double v = 0.0;
    int s = 0;
    if (n == "approaching" || n == "moving_away") {
      v = distance(*a, *b);
    } else if (n == "growing" || n == "shrinking") {
      v = size(*a);
    } else if (n == "moving_up" || n == "moving_down") {
      v = centroid(*a).z;
    } else if (n == "moving_into" || n == "moving_out") {
      Rcc8 r = rcc8_extended(*a, *b, cfg.eps_rcc);
      s = r == Rcc8::dc ? 0 : (r == Rcc8::tpp || r == Rcc8::ntpp || r == Rcc8::eq) ? 2 : 1;
    } else if (n == "merging" || n == "splitting") {
      Rcc8 r = rcc8_extended(*a, *b, cfg.eps_rcc);
      s = r == Rcc8::dc ? 0 : r == Rcc8::ec ? 1 : 2;
      v = distance(*a, *b);
    }
    out.frame.push_back(k);
    out.t.push_back(scene.frame_times()[k]);
    out.v.push_back(v);
    out.s.push_back(s);
    out.p.push_back(centroid(*a));
  }
  return out;
}

Series slice(const Series& s, std::size_t i, std::size_t j) {  // inclusive
  Series out;
  out.frame.assign(s.frame.begin() + i, s.frame.begin() + j + 1);
  out.t.assign(s.t.begin() + i, s.t.begin() + j + 1);
  out.v.assign(s.v.begin() + i, s.v.begin() + j + 1);
  out.s.assign(s.s.begin() + i, s.s.begin() + j + 1);
  out.p.assign(s.p.begin() + i, s.p.begin() + j + 1);
  return out;
}

// Time-reversed copy; times are negated so they still increase.
Series reversed(const Series& s) {
  Series out = s;
  std::reverse(out.frame.begin(), out.frame.end());
  std::reverse(out.t.begin(), out.t.end());
  for (double& t : out.t) t = -t;
  std::reverse(out.v.begin(), out.v.end());
  std::reverse(out.s.begin(), out.s.end());
  std::reverse(out.p.begin(), out.p.end());
  return out;
}

// Splits at unknown gaps longer than gap_max.
std::vector<std::pair<std::size_t, std::size_t>> segments(const Series& s, double gap_max) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (s.size() == 0) return out;
  std::size_t start = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s.t[k] - s.t[k - 1] > gap_max + kTimeEps) {
      out.emplace_back(start, k - 1);
      start = k;
    }
  }
  out.emplace_back(start, s.size() - 1);
  return out;
}

bool contiguous(const Series& s, const SceneRecording& scene, std::size_t lo, std::size_t hi,
                double gap_max) {
  if (s.size() == 0 || lo >= hi) return false;
  const auto& ft = scene.frame_times();
  if (s.t.front() - ft[lo] > gap_max + kTimeEps) return false;
  if (ft[hi - 1] - s.t.back() > gap_max + kTimeEps) return false;
  return segments(s, gap_max).size() == 1;
}

struct TrendSpec {
  double step_tol;
  double net_min;
  double rate_min;  // <= 0 disables
  std::optional<double> floor;
};

TrendSpec trend_spec(std::string_view name, const PatternConfig& cfg) {
  if (name == "approaching" || name == "moving_away")
    return {cfg.eps_d, cfg.delta_min, 0.0, cfg.d_touch};
  if (name == "growing" || name == "shrinking")
    return {cfg.size_step_tol, 0.0, cfg.size_rate_min, std::nullopt};
  return {cfg.vertical_step_tol, cfg.vertical_delta_min, 0.0, std::nullopt};
}

// Mirror patterns are defined as their base pattern on the reversed sequence.
bool is_mirror(std::string_view name) {
  return name == "moving_away" || name == "growing" || name == "moving_up" || name == "moving_out" ||
         name == "splitting";
}

// Decrease over [i, j]: bounded steps, sufficient net drop, no contact
// before the end. The window starts at the last sample of the maximum and
// ends at first contact or at the first sample of the minimum.
bool decreasing_window(const Series& s, std::size_t i, std::size_t j, const TrendSpec& sp) {
  if (j <= i) return false;
  const auto& v = s.v;
  double run_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = i + 1; k <= j; ++k) {
    if (v[k] - v[k - 1] > sp.step_tol) return false;
    if (sp.floor && v[k - 1] <= *sp.floor) return false;
    if (v[k] >= v[i]) return false;
    run_min = std::min(run_min, v[k - 1]);
  }
  bool end_ok = (sp.floor && v[j] <= *sp.floor) || run_min > v[j];
  double drop = v[i] - v[j];
  if (!end_ok || drop < sp.net_min) return false;
  if (sp.rate_min > 0.0 && drop / (s.t[j] - s.t[i]) < sp.rate_min) return false;
  return true;
}

// Inclusion-maximal valid windows of one gap-free series, each as [i, j].
std::vector<std::pair<std::size_t, std::size_t>> decreasing_windows(const Series& s,
                                                                    const TrendSpec& sp) {
  const auto& v = s.v;
  const std::size_t n = s.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::ptrdiff_t max_j = -1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::ptrdiff_t best = -1;
    double run_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (v[j] - v[j - 1] > sp.step_tol) break;
      if (sp.floor && v[j - 1] <= *sp.floor) break;
      if (v[j] >= v[i]) break;
      run_min = std::min(run_min, v[j - 1]);
      bool end_ok = (sp.floor && v[j] <= *sp.floor) || run_min > v[j];
      double drop = v[i] - v[j];
      bool net_ok = drop >= sp.net_min && (sp.rate_min <= 0.0 || drop / (s.t[j] - s.t[i]) >= sp.rate_min);
      if (end_ok && net_ok) best = static_cast<std::ptrdiff_t>(j);
    }
    if (best > max_j) {
      out.emplace_back(i, static_cast<std::size_t>(best));
      max_j = best;
    }
  }
  return out;
}

bool into_sequence(const Series& s) {
  if (s.size() < 2 || s.s.front() != 0 || s.s.back() != 2) return false;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (s.s[k] < s.s[k - 1]) return false;
  return true;
}

bool merge_sequence(const Series& s, double eps_d) {
  if (s.size() < 2 || s.s.front() > 1 || s.s.back() != 2) return false;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s.s[k] < s.s[k - 1]) return false;
    if (s.s[k] < 2 && s.v[k] - s.v[k - 1] > eps_d) return false;
  }
  return true;
}

// Minimal windows [last out, first in] of each entry.
std::vector<std::pair<std::size_t, std::size_t>> into_windows(const Series& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::optional<std::size_t> last_out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.s[k] == 0) {
      last_out = k;
    } else if (s.s[k] == 2) {
      if (last_out) out.emplace_back(*last_out, k);
      last_out.reset();
    }
  }
  return out;
}

// From the last separated sample back through the strictly closing run.
std::vector<std::pair<std::size_t, std::size_t>> merge_windows(const Series& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t m = 1; m < s.size(); ++m) {
    if (s.s[m] != 2 || s.s[m - 1] > 1) continue;
    std::size_t start = m - 1;
    while (start > 0 && s.s[start - 1] <= s.s[start] && s.v[start - 1] > s.v[start]) --start;
    out.emplace_back(start, m);
  }
  return out;
}

bool shape_holds(std::string_view name, const Series& s, const PatternConfig& cfg) {
  if (s.size() < 3) return false;
  const Point3 a = s.p.front();
  const Point3 b = s.p.back();
  if (name == "cyclic") {
    double path = 0.0;
    for (std::size_t k = 1; k < s.size(); ++k) path += norm(s.p[k] - s.p[k - 1]);
    return norm(b - a) <= cfg.cyclic_eps && path > 4.0 * cfg.cyclic_eps;
  }
  const Vec3 chord = b - a;
  const double len = norm(chord);
  double dev = 0.0;
  for (const Point3& p : s.p) {
    const Vec3 r = p - a;
    dev = std::max(dev, len < kGeomEps ? norm(r) : norm(cross(r, chord)) / len);
  }
  return dev > cfg.curvature_min;
}

bool window_holds(const Fluent& f, const PatternInfo& info, const Series& s, const PatternConfig& cfg) {
  const bool mirror = is_mirror(f.name);
  const Series w = mirror ? reversed(s) : s;
  switch (info.cls) {
    case PatternClass::trend:
      return decreasing_window(w, 0, w.size() - 1, trend_spec(f.name, cfg));
    case PatternClass::transition:
      return (f.name == "moving_into" || f.name == "moving_out") ? into_sequence(w)
                                                                 : merge_sequence(w, cfg.eps_d);
    case PatternClass::shape:
      return shape_holds(f.name, s, cfg);
    case PatternClass::state:
      break;
  }
  return false;
}

FluentInterval make_interval(const Fluent& f, const SceneRecording& scene, std::size_t k1,
                             std::size_t k2, std::vector<std::pair<double, Truth>> support) {
  const auto& ft = scene.frame_times();
  return FluentInterval{f, TimeInterval(ft[k1], ft[k2]), std::move(support)};
}

std::vector<FluentInterval> detect_state(const Fluent& f, const SceneRecording& scene,
                                         const PatternConfig& cfg) {
  const auto& ft = scene.frame_times();
  std::vector<Truth> truth(ft.size());
  for (std::size_t k = 0; k < ft.size(); ++k) truth[k] = instant(f, ft[k], scene, cfg);

  std::vector<FluentInterval> out;
  std::optional<std::size_t> start, last;
  auto close = [&] {
    if (start && ft[*last] - ft[*start] >= cfg.dur_min - kTimeEps) {
      std::vector<std::pair<double, Truth>> sup;
      for (std::size_t k = *start; k <= *last; ++k) sup.emplace_back(ft[k], truth[k]);
      out.push_back(make_interval(f, scene, *start, *last, std::move(sup)));
    }
    start.reset();
    last.reset();
  };
  for (std::size_t k = 0; k < ft.size(); ++k) {
    if (truth[k] == Truth::yes) {
      if (start && ft[k] - ft[*last] > cfg.gap_max + kTimeEps) close();
      if (!start) start = k;
      last = k;
    } else if (truth[k] == Truth::no) {
      close();
    }
  }
  close();
  return out;
}

std::vector<FluentInterval> detect_windows(const Fluent& f, const PatternInfo& info,
                                           const SceneRecording& scene, const PatternConfig& cfg) {
  const Series all = collect(f, scene, cfg, 0, scene.frame_times().size());
  const bool mirror = is_mirror(f.name);

  struct Cand {
    std::size_t k1, k2;
    double t1, t2;
  };
  std::vector<Cand> cands;
  for (auto [a, b] : segments(all, cfg.gap_max)) {
    Series seg = slice(all, a, b);
    Series work = mirror ? reversed(seg) : seg;
    std::vector<std::pair<std::size_t, std::size_t>> wins;
    if (info.cls == PatternClass::trend) {
      wins = decreasing_windows(work, trend_spec(f.name, cfg));
    } else if (f.name == "moving_into" || f.name == "moving_out") {
      wins = into_windows(work);
    } else {
      wins = merge_windows(work);
    }
    const std::size_t n = work.size();
    for (auto [i, j] : wins) {
      if (mirror) std::tie(i, j) = std::pair{n - 1 - j, n - 1 - i};
      cands.push_back({seg.frame[i], seg.frame[j], seg.t[i], seg.t[j]});
    }
  }

  std::vector<Cand> kept;
  if (info.cls == PatternClass::trend) {
    std::erase_if(cands, [&](const Cand& c) { return c.t2 - c.t1 < cfg.dur_min - kTimeEps; });
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
      double dx = x.t2 - x.t1, dy = y.t2 - y.t1;
      if (dx != dy) return dx > dy;
      return x.t1 < y.t1;
    });
    for (const Cand& c : cands) {
      bool clash = std::any_of(kept.begin(), kept.end(),
                               [&](const Cand& k) { return c.t1 < k.t2 && k.t1 < c.t2; });
      if (!clash) kept.push_back(c);
    }
  } else {
    kept = cands;
  }
  std::sort(kept.begin(), kept.end(), [](const Cand& x, const Cand& y) { return x.t1 < y.t1; });

  std::vector<FluentInterval> out;
  const auto& ft = scene.frame_times();
  for (const Cand& c : kept) {
    std::vector<std::pair<double, Truth>> sup;
    for (std::size_t k = c.k1; k <= c.k2; ++k) sup.emplace_back(ft[k], Truth::yes);
    out.push_back(make_interval(f, scene, c.k1, c.k2, std::move(sup)));
  }
  return out;
}

// Shapes are judged over each interval of sustained motion.
std::vector<FluentInterval> detect_shape(const Fluent& f, const SceneRecording& scene,
                                         const PatternConfig& cfg) {
  std::vector<FluentInterval> out;
  for (const auto& m : detect_state(Fluent{"moving", f.args}, scene, cfg)) {
    auto [lo, hi] = frames_in(scene, m.interval);
    Series s = collect(f, scene, cfg, lo, hi);
    if (!shape_holds(f.name, s, cfg)) continue;
    std::vector<std::pair<double, Truth>> sup;
    for (double t : s.t) sup.emplace_back(t, Truth::yes);
    out.push_back(FluentInterval{f, m.interval, std::move(sup)});
  }
  return out;
}

}  // namespace

std::string_view label(Truth t) {
  switch (t) {
    case Truth::no: return "false";
    case Truth::yes: return "true";
    case Truth::unknown: return "unknown";
  }
  return "unknown";
}

std::string Fluent::to_string() const {
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += args[i];
  }
  return s + ")";
}

void validate(const PatternConfig& c) {
  const std::pair<const char*, double> positive[] = {
      {"d_touch", c.d_touch},
      {"eps_d", c.eps_d},
      {"delta_min", c.delta_min},
      {"v_s", c.v_s},
      {"w_s", c.w_s},
      {"gap_max", c.gap_max},
      {"dur_min", c.dur_min},
      {"parallel_angle", c.parallel_angle},
      {"attach_distance", c.attach_distance},
      {"attach_velocity", c.attach_velocity},
      {"attach_angle", c.attach_angle},
      {"size_step_tol", c.size_step_tol},
      {"size_rate_min", c.size_rate_min},
      {"vertical_step_tol", c.vertical_step_tol},
      {"vertical_delta_min", c.vertical_delta_min},
      {"curvature_min", c.curvature_min},
      {"cyclic_eps", c.cyclic_eps},
  };
  for (auto [name, v] : positive)
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(Errc::ConfigError, std::string("patterns.") + name + " must be positive");
  if (!(c.eps_rcc >= 0.0)) throw Error(Errc::ConfigError, "patterns.eps_rcc must be non-negative");
}

void validate_for_scene(const PatternConfig& cfg, const SceneRecording& scene) {
  const auto& ft = scene.frame_times();
  if (ft.size() < 2) return;
  std::vector<double> dt;
  dt.reserve(ft.size() - 1);
  for (std::size_t k = 1; k < ft.size(); ++k) dt.push_back(ft[k] - ft[k - 1]);
  std::nth_element(dt.begin(), dt.begin() + dt.size() / 2, dt.end());
  const double period = dt[dt.size() / 2];
  if (cfg.dur_min < 2.0 * period - kTimeEps)
    throw Error(Errc::ConfigError, "patterns.dur_min (" + std::to_string(cfg.dur_min) +
                                       " s) is shorter than two frame periods (" +
                                       std::to_string(2.0 * period) + " s)");
}

const std::vector<PatternInfo>& pattern_table() { return kPatterns; }

const PatternInfo& pattern_info(std::string_view name) {
  for (const auto& p : kPatterns)
    if (p.name == name) return p;
  throw Error(Errc::UnknownFluentName, "unknown fluent '" + std::string(name) + "'");
}

std::optional<Vec3> windowed_velocity(const SceneRecording& scene, std::string_view id, double t,
                                      const PatternConfig& cfg) {
  const auto& h = scene.track(id).history;
  if (h.is_static()) return Vec3{};
  if (!is_observed(scene, id, t)) return std::nullopt;
  const auto& smp = h.samples();
  auto by_time = [](const TimedEntity& e, double x) { return e.t < x; };
  auto lo = std::lower_bound(smp.begin(), smp.end(), t - cfg.w_s / 2.0 - kTimeEps, by_time);
  auto hi = std::lower_bound(smp.begin(), smp.end(), t + cfg.w_s / 2.0 + kTimeEps, by_time);
  if (hi - lo < 2) return std::nullopt;
  const TimedEntity& first = *lo;
  const TimedEntity& last = *(hi - 1);
  return (centroid(last.entity) - centroid(first.entity)) * (1.0 / (last.t - first.t));
}

Truth holds_at(const Fluent& f, double t, const SceneRecording& scene, const PatternConfig& cfg) {
  const PatternInfo& info = checked(f, scene);
  if (info.cls == PatternClass::state) return instant(f, t, scene, cfg);
  for (const auto& a : f.args)
    if (!is_observed(scene, a, t)) return Truth::unknown;
  for (const auto& iv : detect_intervals(f, scene, cfg))
    if (iv.interval.contains(t, kTimeEps)) return Truth::yes;
  return Truth::no;
}

bool holds_in(const Fluent& f, const TimeInterval& delta, const SceneRecording& scene,
              const PatternConfig& cfg) {
  const PatternInfo& info = checked(f, scene);
  auto [lo, hi] = frames_in(scene, delta);
  if (lo >= hi) return false;
  const auto& ft = scene.frame_times();

  if (info.cls == PatternClass::state) {
    std::optional<double> last_known = ft[lo];
    bool any = false;
    for (std::size_t k = lo; k < hi; ++k) {
      Truth v = instant(f, ft[k], scene, cfg);
      if (v == Truth::no) return false;
      if (v == Truth::unknown) continue;
      if (ft[k] - *last_known > cfg.gap_max + kTimeEps) return false;
      last_known = ft[k];
      any = true;
    }
    return any && ft[hi - 1] - *last_known <= cfg.gap_max + kTimeEps;
  }

  Series s = collect(f, scene, cfg, lo, hi);
  if (!contiguous(s, scene, lo, hi, cfg.gap_max)) return false;
  return window_holds(f, info, s, cfg);
}

bool eval_approaching(std::string_view oi, std::string_view oj, const TimeInterval& delta,
                      const SceneRecording& scene, const PatternConfig& cfg) {
  return holds_in(Fluent{"approaching", {std::string(oi), std::string(oj)}}, delta, scene, cfg);
}

bool motion_pattern(std::string_view name, const std::vector<std::string>& args,
                    const TimeInterval& delta, const SceneRecording& scene, const PatternConfig& cfg) {
  return holds_in(Fluent{std::string(name), args}, delta, scene, cfg);
}

std::vector<FluentInterval> detect_intervals(const Fluent& f, const SceneRecording& scene,
                                             const PatternConfig& cfg) {
  const PatternInfo& info = checked(f, scene);
  if (scene.empty()) return {};
  switch (info.cls) {
    case PatternClass::state: return detect_state(f, scene, cfg);
    case PatternClass::shape: return detect_shape(f, scene, cfg);
    default: return detect_windows(f, info, scene, cfg);
  }
}

const std::vector<FluentInterval>& FluentIndex::intervals(const Fluent& f) {
  auto it = cache_.find(f);
  if (it == cache_.end()) it = cache_.emplace(f, detect_intervals(f, scene_, cfg_)).first;
  return it->second;
}

}  // namespace scenesem
