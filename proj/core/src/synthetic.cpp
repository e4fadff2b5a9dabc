#include "scenesem/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace scenesem::synth {

namespace {

// Own point-to-box distance so fixture truth does not lean on the library.
double box_distance(Point3 p, Point3 lo, Point3 hi) {
  const double dx = std::max({lo.x - p.x, 0.0, p.x - hi.x});
  const double dy = std::max({lo.y - p.y, 0.0, p.y - hi.y});
  const double dz = std::max({lo.z - p.z, 0.0, p.z - hi.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<double> frame_times(double duration, double rate) {
  const auto n = static_cast<std::size_t>(std::llround(duration * rate));
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = static_cast<double>(k) / rate;
  return t;
}

BodyPose pose(const std::string& id, Point3 base, Point3 left, Point3 right) {
  BodyPose p{id, {}};
  p.joints["spine_base"] = {base, 1.0};
  p.joints["head"] = {base + Vec3{0.0, 0.0, 0.65}, 1.0};
  p.joints["hand_left"] = {left, 1.0};
  p.joints["hand_right"] = {right, 1.0};
  return p;
}

ObjectObservation box(const std::string& id, Point3 center, Vec3 half) {
  return {id, id, ObjectKind::object, AABox::cuboid(center - half, center + half)};
}

constexpr double kTouch = 0.05;  // default contact distance

// [first, last] frame times of the first contact run.
std::array<double, 2> contact_run(const std::vector<double>& ft, const std::vector<double>& d) {
  std::size_t i = 0;
  while (i < d.size() && d[i] > kTouch) ++i;
  std::size_t j = i;
  while (j + 1 < d.size() && d[j + 1] <= kTouch) ++j;
  return {ft[i], ft[j]};
}

}  // namespace

Point3 at(const std::vector<Keyframe>& keys, double t) {
  if (t <= keys.front().t) return keys.front().p;
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    if (t <= keys[i + 1].t) {
      const double s = (t - keys[i].t) / (keys[i + 1].t - keys[i].t);
      return keys[i].p + s * (keys[i + 1].p - keys[i].p);
    }
  }
  return keys.back().p;
}

ActivityFixture approach_touch(double rate) {
  const Point3 base{0.0, -0.55, 0.95}, left{-0.25, -0.35, 0.9};
  const Point3 start{0.0, -0.3, 0.95}, top{0.35, 0.05, 0.85};
  const std::vector<Keyframe> hand{{0.0, start}, {0.5, start}, {1.5, top}, {3.0, top}};
  const Point3 cup{0.35, 0.05, 0.80};
  const Vec3 half{0.05, 0.05, 0.05};

  ActivityFixture fx;
  fx.frame_period = 1.0 / rate;
  const auto ft = frame_times(3.0, rate);
  std::vector<double> d;
  for (double t : ft) {
    const Point3 h = at(hand, t);
    fx.scene.frames.push_back({t, {pose("p1", base, left, h)}, {box("cup", cup, half)}});
    d.push_back(box_distance(h, cup - half, cup + half));
  }
  const auto touch = contact_run(ft, d);
  fx.expected.push_back({"reach_for(p1, cup)", 0.5, touch[1]});
  fx.fluents.push_back({"approaching", {0.5, touch[0]}});
  fx.fluents.push_back({"touching", {touch[0], touch[1]}});
  return fx;
}

ActivityFixture sandwich(double rate) {
  const Point3 base{0.0, -0.55, 0.95}, left{-0.25, -0.35, 0.9};
  const Point3 start{0.0, -0.3, 0.95};
  const Point3 grip{0.36, 0.06, 0.83};  // top of the bread
  const Point3 high{0.36, 0.06, 1.03};
  const Point3 over{-0.10, 0.10, 1.03};
  const Point3 down{-0.10, 0.10, 0.85};
  const std::vector<Keyframe> hand{{0.0, start}, {0.5, start}, {1.5, grip}, {2.3, grip}, {3.1, high},
                                   {4.1, over},  {4.9, down},  {5.3, down}, {6.3, start}, {6.8, start}};
  const Vec3 half{0.06, 0.06, 0.04};
  const Vec3 below{0.0, 0.0, 0.04};
  const Point3 board_c{-0.10, 0.10, 0.76};
  const Vec3 board_h{0.15, 0.10, 0.01};

  ActivityFixture fx;
  fx.frame_period = 1.0 / rate;
  const auto ft = frame_times(6.8, rate);
  std::vector<double> d;
  for (double t : ft) {
    const Point3 h = at(hand, t);
    const Point3 bread = t < 1.5 ? grip - below : t <= 5.3 ? h - below : down - below;
    fx.scene.frames.push_back(
        {t, {pose("p1", base, left, h)}, {box("bread", bread, half), box("board", board_c, board_h)}});
    d.push_back(box_distance(h, bread - half, bread + half));
  }
  const auto touch = contact_run(ft, d);
  fx.expected.push_back({"reach_for(p1, bread)", 0.5, touch[1]});
  fx.expected.push_back({"pick_up(p1, bread)", touch[0], 3.1});
  fx.expected.push_back({"put_down(p1, bread)", 4.1, touch[1]});
  fx.fluents.push_back({"approaching", {0.5, touch[0]}});
  fx.fluents.push_back({"touching", {touch[0], touch[1]}});
  fx.fluents.push_back({"moving_up", {2.3, 3.1}});
  fx.fluents.push_back({"moving_down", {4.1, 4.9}});
  return fx;
}

std::string_view label(Walker w) {
  switch (w) {
    case Walker::empty: return "empty";
    case Walker::same_direction: return "same_direction";
    case Walker::opposing: return "opposing";
    case Walker::loitering: return "loitering";
  }
  return "?";
}

FloorPlan corridor_plan() {
  auto rect = [](std::string id, StructureType type, double x0, double y0, double x1, double y1) {
    FloorPlanStructure s;
    s.id = std::move(id);
    s.type = type;
    s.corners = {Point2{x0, y0}, Point2{x1, y0}, Point2{x1, y1}, Point2{x0, y1}};
    s.side_coverage = {1.0, 1.0, 1.0, 1.0};
    s.coverage = 1.0;
    s.major_axis = (x1 - x0) >= (y1 - y0) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    return s;
  };
  FloorPlan plan;
  plan.structures.push_back(rect("room1", StructureType::room, -4.0, -1.0, 0.0, 3.0));
  plan.structures.push_back(rect("corridor2", StructureType::corridor, 0.0, 0.0, 10.0, 2.0));
  plan.structures.push_back(rect("room3", StructureType::room, 10.0, -1.0, 14.0, 3.0));
  plan.adjacency = {{"corridor2", "room1"}, {"corridor2", "room3"}};
  return plan;
}

NavFixture corridor_walk(Walker w) {
  NavFixture fx{corridor_plan(), {}, {}, 6.0, true, {}};
  fx.scene.frame = CoordinateFrame::map;
  fx.scene.frame_rate = 10.0;
  fx.path.waypoints = {{-2.0, 1.0}, {12.0, 1.0}};

  std::vector<Keyframe> walk;
  switch (w) {
    case Walker::empty: walk = {{0.0, {-2.0, 1.5, 0.9}}, {14.0, {-2.0, 1.5, 0.9}}}; break;
    case Walker::same_direction: walk = {{0.0, {-2.0, 1.4, 0.9}}, {14.0, {12.0, 1.4, 0.9}}}; break;
    case Walker::opposing: walk = {{0.0, {12.0, 0.6, 0.9}}, {14.0, {-2.0, 0.6, 0.9}}}; break;
    case Walker::loitering: walk = {{0.0, {5.0, 1.0, 0.9}}, {14.0, {5.0, 1.0, 0.9}}}; break;
  }
  fx.expect_possible = w == Walker::empty || w == Walker::same_direction;
  if (!fx.expect_possible) fx.expect_blockers = {"ped1"};

  for (double t : frame_times(14.0, 10.0)) {
    Point3 p = at(walk, t);
    if (w == Walker::loitering) p = p + Vec3{0.3 * std::sin(0.7 * t), 0.2 * std::sin(1.1 * t), 0.0};
    BodyPose b{"ped1", {}};
    b.joints["spine_base"] = {p, 1.0};
    b.joints["head"] = {p + Vec3{0.0, 0.0, 0.7}, 1.0};
    fx.scene.frames.push_back({t, {std::move(b)}, {}});
  }
  return fx;
}

SceneRecording random_tracks(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-2.5, 2.5), half(0.2, 0.5), big(0.5, 0.9), hop(1.0, 1.6);
  auto keys = [&] {
    std::vector<Keyframe> k;
    double t = 0.0;
    while (t < 4.0) {
      k.push_back({t, {pos(rng), pos(rng), 0.0}});
      t += hop(rng);
    }
    k.push_back({4.0, {pos(rng), pos(rng), 0.0}});
    return k;
  };
  const auto ka = keys();
  const auto kp = keys();
  const double ha = half(rng), hb = big(rng);
  std::vector<TimedEntity> a, b, p;
  for (double t : frame_times(4.0, 10.0)) {
    const Point3 ca = at(ka, t), cp = at(kp, t);
    a.push_back({t, AABox::rect(ca.x - ha, ca.y - ha, ca.x + ha, ca.y + ha)});
    b.push_back({t, AABox::rect(-hb, -hb, hb, hb)});
    p.push_back({t, Point2{cp.x, cp.y}});
  }
  std::vector<SceneTrack> tracks;
  tracks.push_back({{"a", ObjectKind::object, "box", std::nullopt}, SpaceTimeHistory(std::move(a))});
  tracks.push_back({{"b", ObjectKind::object, "box", std::nullopt}, SpaceTimeHistory(std::move(b))});
  tracks.push_back({{"p", ObjectKind::object, "marker", std::nullopt}, SpaceTimeHistory(std::move(p))});
  return SceneRecording(std::move(tracks), CoordinateFrame::map);
}

std::vector<TruthStructure> room_corridor_truth(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  auto rot = [&](double x, double y) { return Point2{c * x - s * y, s * x + c * y}; };
  return {{StructureType::room, {rot(0, 0), rot(4, 0), rot(4, 6), rot(0, 6)}},
          {StructureType::corridor, {rot(4, -2), rot(6, -2), rot(6, 8), rot(4, 8)}}};
}

PointCloud sample_surfaces(const std::vector<WallSpec>& walls, const std::vector<SlabSpec>& slabs, double density,
                           double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, sigma);
  auto jitter = [&] { return sigma > 0.0 ? Vec3{noise(rng), noise(rng), noise(rng)} : Vec3{}; };
  PointCloud cloud;
  for (const auto& w : walls) {
    const double len = norm(w.b - w.a), h = w.z1 - w.z0;
    const auto n = static_cast<std::size_t>(std::llround(density * len * h));
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 q = w.a + u(rng) * (w.b - w.a);
      const double z = w.z0 + u(rng) * h;
      cloud.points.push_back(Point3{q.x, q.y, z} + jitter());
    }
  }
  for (const auto& s : slabs) {
    const auto n = static_cast<std::size_t>(std::llround(density * (s.x1 - s.x0) * (s.y1 - s.y0)));
    for (std::size_t i = 0; i < n; ++i) {
      const double x = s.x0 + u(rng) * (s.x1 - s.x0);
      const double y = s.y0 + u(rng) * (s.y1 - s.y0);
      cloud.points.push_back(Point3{x, y, s.z} + jitter());
    }
  }
  return cloud;
}

PointCloud room_corridor_cloud(double density, double sigma, std::uint64_t seed) {
  const double H = 2.5;
  const std::vector<WallSpec> walls{
      {{0, 0}, {0, 6}, 0, H},  {{0, 0}, {4, 0}, 0, H},   {{0, 6}, {4, 6}, 0, H},   {{4, -2}, {4, 8}, 0, H},
      {{6, -2}, {6, 8}, 0, H}, {{4, -2}, {6, -2}, 0, H}, {{4, 8}, {6, 8}, 0, H},
  };
  const std::vector<SlabSpec> slabs{{0, 0, 4, 6, 0.0}, {4, -2, 6, 8, 0.0}, {0, 0, 4, 6, H}, {4, -2, 6, 8, H}};
  return sample_surfaces(walls, slabs, density, sigma, seed);
}

PointCloud noise_cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i) c.points.push_back({u(rng), u(rng), 0.5 * u(rng)});
  return c;
}

double corner_error(const std::array<Point2, 4>& a, const std::array<Point2, 4>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 4; ++s) {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) worst = std::max(worst, norm(a[k] - b[(k + s) % 4]));
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace scenesem::synth
