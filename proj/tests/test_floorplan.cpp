#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "scenesem/error.hpp"
#include "scenesem/floorplan.hpp"
#include "scenesem/synthetic.hpp"

using namespace scenesem;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

WallSegment seg(Point2 a, Point2 b, double weight = 1000.0) {
  const Vec2 d = normalized(b - a);
  WallSegment w;
  w.a = a;
  w.b = b;
  w.centroid = lift(0.5 * (a + b), 1.25);
  w.normal = {-d.y, d.x, 0.0};
  w.height = 2.5;
  w.width = norm(b - a);
  w.z_max = 2.5;
  w.weight = weight;
  return w;
}

// Room [x0,x1] x [y0,y1] with floor and ceiling.
PointCloud box_room(double x0, double y0, double x1, double y1, double density, double sigma, std::uint64_t seed,
                    std::vector<synth::WallSpec> extra = {}) {
  std::vector<synth::WallSpec> walls{{{x0, y0}, {x1, y0}, 0, 2.5},
                                     {{x1, y0}, {x1, y1}, 0, 2.5},
                                     {{x1, y1}, {x0, y1}, 0, 2.5},
                                     {{x0, y1}, {x0, y0}, 0, 2.5}};
  walls.insert(walls.end(), extra.begin(), extra.end());
  return synth::sample_surfaces(walls, {{x0, y0, x1, y1, 0.0}, {x0, y0, x1, y1, 2.5}}, density, sigma, seed);
}

std::vector<PlanarRegion> planes_of(const PointCloud& c, const FloorplanConfig& cfg) {
  const PointCloud ds = voxel_downsample(c, 2.0 * cfg.dist_tol);
  const NormalEstimate est = estimate_normals(ds, cfg.k_neighbors);
  return detect_planes(est, cfg);
}

FloorPlanStructure rect(std::string id, double x0, double y0, double x1, double y1) {
  FloorPlanStructure s;
  s.id = std::move(id);
  s.corners = {Point2{x0, y0}, Point2{x1, y0}, Point2{x1, y1}, Point2{x0, y1}};
  s.major_axis = (x1 - x0) >= (y1 - y0) ? Vec2{1, 0} : Vec2{0, 1};
  s.coverage = 1.0;
  s.side_coverage = {1, 1, 1, 1};
  return s;
}

double worst_corner_error(const FloorPlan& plan, const std::vector<synth::TruthStructure>& truth) {
  double worst = 0.0;
  for (const auto& t : truth) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : plan.structures)
      if (s.type == t.type) best = std::min(best, synth::corner_error(s.corners, t.corners));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST(Normals, PlanarPatchesWithinTwoDegrees) {
  const PointCloud c = synth::sample_surfaces({{{0, 0}, {2, 0}, 0, 2}}, {{3, 0, 5, 2, 0.5}}, 2000, 0.001, 5);
  const NormalEstimate est = estimate_normals(c, 32);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec3 truth = c.points[i].x < 2.5 ? Vec3{0, 1, 0} : Vec3{0, 0, 1};
    if (std::abs(dot(est.cloud.normals[i], truth)) < std::cos(2 * kDeg)) ++bad;
  }
  EXPECT_LT(bad, c.size() / 100);
}

TEST(Planes, BoxRoomHasSix) {
  FloorplanConfig cfg;
  const auto planes = planes_of(box_room(0, 0, 4, 3, 500, 0.003, 11), cfg);
  EXPECT_EQ(planes.size(), 6u);
}

TEST(Planes, SinglePlaneTakesAlmostEverything) {
  FloorplanConfig cfg;
  const PointCloud c = synth::sample_surfaces({{{0, 0}, {4, 0}, 0, 2.5}}, {}, 1000, 0.003, 3);
  const auto planes = planes_of(c, cfg);
  ASSERT_GE(planes.size(), 1u);
  EXPECT_GE(planes[0].weight, 0.99 * static_cast<double>(c.size()));
}

TEST(Planes, NoiseHasNone) {
  FloorplanConfig cfg;
  EXPECT_TRUE(planes_of(synth::noise_cloud(20000, 9), cfg).empty());
}

TEST(Walls, FloorAndLowPartitionRejected) {
  FloorplanConfig cfg;
  const PointCloud c = box_room(0, 0, 4, 3, 500, 0.003, 13, {{{1, 1.5}, {3, 1.5}, 0, 0.8}});
  const auto planes = planes_of(c, cfg);
  const PointCloud ds = voxel_downsample(c, 2.0 * cfg.dist_tol);
  auto walls = wall_candidates(ds, planes, cfg);
  EXPECT_EQ(walls.size(), 4u);
  for (const auto& w : walls) EXPECT_LT(std::abs(w.normal.z), 1e-12);

  // With the ceiling declared just above it, the partition reaches the ceiling.
  cfg.ceiling_z = 0.9;
  walls = wall_candidates(ds, planes, cfg);
  const bool has_partition = std::any_of(walls.begin(), walls.end(), [](const WallSegment& w) { return w.z_max < 1.0; });
  EXPECT_TRUE(has_partition);
}

TEST(Walls, AngleIsModuloPi) {
  EXPECT_NEAR(wall_angle(seg({0, 0}, {1, 0})), 0.0, 1e-12);
  EXPECT_NEAR(wall_angle(seg({1, 0}, {0, 0})), 0.0, 1e-12);
  EXPECT_NEAR(wall_angle(seg({0, 0}, {0, -1})), std::numbers::pi / 2, 1e-12);
  // Brute force: reversing a segment never changes its angle.
  for (int d = 0; d < 360; d += 7) {
    const Point2 b{std::cos(d * kDeg), std::sin(d * kDeg)};
    const double fwd = wall_angle(seg({0, 0}, b)), bwd = wall_angle(seg(b, {0, 0}));
    EXPECT_NEAR(fwd, bwd, 1e-9) << d;
    EXPECT_GE(fwd, 0.0);
    EXPECT_LT(fwd, std::numbers::pi);
  }
}

TEST(Cluster, OppositeDirectionsJoin) {
  FloorplanConfig cfg;
  const auto c = cluster_walls({seg({0, 0}, {1, 0}), seg({3, 0.01}, {2, 0.01})}, cfg);
  EXPECT_EQ(c.size(), 1u);
}

TEST(Cluster, WrapAroundNearZero) {
  FloorplanConfig cfg;
  const double e = 1 * kDeg;
  const auto c = cluster_walls({seg({0, 0}, {std::cos(e), std::sin(e)}), seg({0, 0}, {std::cos(-e), std::sin(-e)})}, cfg);
  EXPECT_EQ(c.size(), 1u);
}

TEST(Cluster, ParallelWallsStaySeparate) {
  FloorplanConfig cfg;
  const auto c = cluster_walls({seg({0, 0}, {4, 0}), seg({0, 4}, {4, 4})}, cfg);
  EXPECT_EQ(c.size(), 2u);
}

TEST(Cluster, FragmentsFormOneLine) {
  FloorplanConfig cfg;
  std::vector<WallSegment> walls;
  for (int i = 0; i < 6; ++i) {
    const double jitter = (i % 2 ? 1 : -1) * 0.01;
    walls.push_back(seg({i * 1.0, 2 + jitter}, {i + 0.8, 2 - jitter}));
  }
  const auto c = cluster_walls(walls, cfg);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].size(), 6u);
  const auto lines = fit_lines(walls, c);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_NEAR(lines[0].point.y, 2.0, 1e-6);
  EXPECT_NEAR(std::abs(lines[0].dir.x), 1.0, 1e-4);
}

TEST(Lines, VerticalLine) {
  const std::vector<WallSegment> walls{seg({3, 0}, {3, 2}), seg({3, 3}, {3, 5})};
  const auto lines = fit_lines(walls, {{0, 1}});
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_NEAR(lines[0].point.x, 3.0, 1e-9);
  EXPECT_NEAR(lines[0].dir.x, 0.0, 1e-9);
  EXPECT_NEAR(lines[0].dir.y, 1.0, 1e-9);
  EXPECT_NEAR(lines[0].residual, 0.0, 1e-9);
}

TEST(Rooms, LongHallIsCorridor) {
  FloorplanConfig cfg;
  const auto r = extract_floorplan(box_room(0, 0, 10, 2, 500, 0.003, 17), cfg);
  ASSERT_EQ(r.plan.structures.size(), 1u);
  const auto& s = r.plan.structures[0];
  EXPECT_EQ(s.type, StructureType::corridor);
  EXPECT_EQ(s.id, "corridor1");
  EXPECT_NEAR(s.length(), 10.0, 0.05);
  EXPECT_NEAR(s.width(), 2.0, 0.05);
  EXPECT_GE(s.coverage, cfg.min_coverage);
  EXPECT_TRUE(r.plan.warnings.empty());
}

TEST(Rooms, NoiseGivesWarningOnly) {
  const auto r = extract_floorplan(synth::noise_cloud(20000, 4), FloorplanConfig{});
  EXPECT_TRUE(r.plan.structures.empty());
  ASSERT_FALSE(r.plan.warnings.empty());
  EXPECT_EQ(r.plan.warnings[0].rfind("NoRoomsFound", 0), 0u);
}

TEST(Rooms, TooFewPointsIsAWarning) {
  PointCloud c;
  c.points = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const auto r = extract_floorplan(c, FloorplanConfig{});
  EXPECT_TRUE(r.plan.structures.empty());
  EXPECT_FALSE(r.plan.warnings.empty());
}

TEST(Rooms, NoiseRobustness) {
  const auto truth = synth::room_corridor_truth(0.0);
  const std::array<std::pair<double, double>, 3> cases{{{0.005, 0.03}, {0.01, 0.05}, {0.02, 0.10}}};
  for (auto [sigma, bound] : cases) {
    const auto r = extract_floorplan(synth::room_corridor_cloud(2000, sigma, 21), FloorplanConfig{});
    ASSERT_EQ(r.plan.structures.size(), 2u) << sigma;
    EXPECT_LT(worst_corner_error(r.plan, truth), bound) << sigma;
    for (const auto& s : r.plan.structures) EXPECT_GE(s.coverage, FloorplanConfig{}.min_coverage);
    EXPECT_EQ(r.plan.adjacency.size(), 1u);
  }
}

TEST(Rooms, DeterministicAndRoundTrips) {
  const PointCloud c = synth::room_corridor_cloud(800, 0.01, 3);
  const auto a = extract_floorplan(c, FloorplanConfig{});
  const auto b = extract_floorplan(c, FloorplanConfig{});
  const std::string ja = to_json(a.plan).dump();
  EXPECT_EQ(ja, to_json(b.plan).dump());
  EXPECT_EQ(to_json(floorplan_from_json(nlohmann::json::parse(ja))).dump(), ja);
  EXPECT_EQ(debug_svg(a), debug_svg(b));

  try {
    floorplan_from_json(nlohmann::json::parse(R"({"structures":[{"id":"room1"}]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
  }
}

TEST(Locate, TieRules) {
  FloorPlan plan;
  plan.structures = {rect("a", 0, 0, 2, 2), rect("b", 2, 0, 4, 2)};
  EXPECT_EQ(locate({1, 1}, plan), std::optional<std::string>("a"));
  EXPECT_EQ(locate({2, 1}, plan), std::optional<std::string>("a"));  // equidistant
  EXPECT_EQ(locate({9, 9}, plan), std::nullopt);
  plan.structures[1] = rect("b", 2, 0, 3, 2);
  EXPECT_EQ(locate({2, 1}, plan), std::optional<std::string>("b"));  // nearer centre
}

TEST(Cloud, ReadPlyAndXyz) {
  std::istringstream ply(
      "ply\nformat ascii 1.0\nelement vertex 2\nproperty float z\nproperty float x\nproperty float y\n"
      "end_header\n3 1 2\n6 4 5\n");
  const PointCloud p = read_cloud(ply);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.points[0], (Point3{1, 2, 3}));
  EXPECT_FALSE(p.has_normals());

  std::istringstream xyz("# comment\n1 2 3 0 0 1\n4 5 6 0 0 1\n");
  const PointCloud q = read_cloud(xyz);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_TRUE(q.has_normals());

  std::ostringstream out;
  write_xyz(out, q);
  std::istringstream again(out.str());
  EXPECT_EQ(read_cloud(again).points, q.points);
}

TEST(Cloud, ParseErrorsCiteTheLine) {
  std::istringstream bad("1 2 3\n4 five 6\n");
  try {
    read_cloud(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream binary("ply\nformat binary_little_endian 1.0\nelement vertex 1\nproperty float x\nend_header\n");
  EXPECT_THROW(read_cloud(binary), Error);
}

TEST(Cloud, KdTreeMatchesBruteForce) {
  const PointCloud c = synth::noise_cloud(2000, 1);
  const KdTree tree(c.points);
  for (std::size_t q = 0; q < c.size(); q += 97) {
    std::vector<std::uint32_t> idx(c.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
      const double da = norm(c.points[a] - c.points[q]), db = norm(c.points[b] - c.points[q]);
      return da != db ? da < db : a < b;
    });
    idx.resize(16);
    EXPECT_EQ(tree.knn(c.points[q], 16), idx) << q;
  }
}

TEST(Config, RejectsBadValues) {
  FloorplanConfig cfg;
  cfg.k_neighbors = 2;
  EXPECT_THROW(validate(cfg), Error);
  cfg = {};
  cfg.min_coverage = 1.5;
  EXPECT_THROW(validate(cfg), Error);
}
