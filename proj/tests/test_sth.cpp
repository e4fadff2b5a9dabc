#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "scenesem/error.hpp"
#include "scenesem/sth.hpp"

using namespace scenesem;

namespace {

SpaceTimeHistory two_samples(SpatialEntity a, SpatialEntity b) {
  return SpaceTimeHistory({{0.0, std::move(a)}, {1.0, std::move(b)}});
}

SceneTrack track(std::string id, SpaceTimeHistory h, ObjectKind kind = ObjectKind::object) {
  return {DomainObject{std::move(id), kind, "thing", std::nullopt}, std::move(h)};
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return Errc::InvalidEntity;
}

}  // namespace

TEST(History, InterpolatesPointsAndBoxes) {
  const auto h = two_samples(Point3{0, 0, 0}, Point3{2, 0, 0});
  EXPECT_EQ(std::get<Point3>(h.entity_at(0.5)), (Point3{1, 0, 0}));
  EXPECT_EQ(std::get<Point3>(h.entity_at(1.0)), (Point3{2, 0, 0}));

  const auto b = two_samples(AABox::rect(0, 0, 1, 1), AABox::rect(2, 0, 3, 1));
  const auto mid = std::get<AABox>(b.entity_at(0.5));
  EXPECT_DOUBLE_EQ(mid.min.x, 1.0);
  EXPECT_DOUBLE_EQ(mid.max.x, 2.0);
  EXPECT_DOUBLE_EQ(mid.max.y, 1.0);
}

TEST(History, RejectsOutOfRangeAndBadOrdering) {
  const auto h = two_samples(Point3{0, 0, 0}, Point3{2, 0, 0});
  EXPECT_EQ(code_of([&] { h.entity_at(1.5); }), Errc::OutOfRange);
  EXPECT_THROW(SpaceTimeHistory({{1.0, Point3{}}, {0.5, Point3{}}}), Error);
  EXPECT_THROW(SpaceTimeHistory({{0.0, Point3{}}, {1.0, AABox::rect(0, 0, 1, 1)}}), Error);
}

TEST(History, ConstantCoversEverything) {
  const auto h = SpaceTimeHistory::constant(AABox::rect(0, 0, 1, 1));
  EXPECT_TRUE(h.is_static());
  EXPECT_TRUE(h.covers(-100.0));
  EXPECT_EQ(position(h, 42.0), (Point3{0.5, 0.5, 0}));
}

TEST(Properties, PositionSizeDistanceAngle) {
  const auto sq = SpaceTimeHistory::constant(AABox::rect(0, 0, 1, 1));
  EXPECT_EQ(position(sq, 0.0), (Point3{0.5, 0.5, 0}));
  EXPECT_DOUBLE_EQ(size_at(sq, 3.0), 1.0);

  const auto p = SpaceTimeHistory::constant(Point3{0, 0, 0});
  const auto q = SpaceTimeHistory::constant(Point3{3, 4, 0});
  for (double t : {0.0, 1.0, 7.5}) EXPECT_DOUBLE_EQ(distance_at(p, q, t), 5.0);

  const auto sx = SpaceTimeHistory::constant(Segment{{0, 0, 0}, {1, 0, 0}});
  const auto sy = SpaceTimeHistory::constant(Segment{{0, 0, 0}, {0, 1, 0}});
  EXPECT_NEAR(angle_at(sx, sy, 0.0), std::numbers::pi / 2, 1e-12);
}

TEST(Motion, VelocityAndDirection) {
  const auto h = two_samples(Point3{0, 0, 0}, Point3{2, 0, 0});
  EXPECT_DOUBLE_EQ(movement_velocity(h, 0.0, 1.0), 2.0);
  const Vec3 d = movement_direction(h, 0.0, 1.0);
  EXPECT_NEAR(d.x, 1.0, 1e-12);

  const auto diag = two_samples(Point3{0, 0, 0}, Point3{1, 1, 0});
  const Vec3 e = movement_direction(diag, 0.0, 1.0);
  EXPECT_NEAR(e.x, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(e.y, std::sqrt(0.5), 1e-12);

  const auto still = SpaceTimeHistory::constant(Point3{1, 1, 1});
  EXPECT_DOUBLE_EQ(movement_velocity(still, 0.0, 1.0), 0.0);
  EXPECT_EQ(code_of([&] { movement_direction(still, 0.0, 1.0); }), Errc::NoSignificantMotion);
}

TEST(Motion, FullCircleHasZeroNetVelocity) {
  std::vector<TimedEntity> s;
  for (int k = 0; k <= 16; ++k) {
    const double a = 2 * std::numbers::pi * k / 16.0;
    s.push_back({k / 16.0, Point3{std::cos(a), std::sin(a), 0}});
  }
  const SpaceTimeHistory h(std::move(s));
  EXPECT_NEAR(movement_velocity(h, 0.0, 1.0), 0.0, 1e-12);
}

TEST(Motion, RotationWrapsToHalfOpenRange) {
  const auto turn = [](Vec3 a, Vec3 b) { return two_samples(OrientedPoint{{0, 0, 0}, a}, OrientedPoint{{0, 0, 0}, b}); };
  EXPECT_NEAR(rotation(turn({1, 0, 0}, {0, 1, 0}), 0.0, 1.0), std::numbers::pi / 2, 1e-12);
  EXPECT_NEAR(rotation(turn({1, 0, 0}, {1, 0, 0}), 0.0, 1.0), 0.0, 1e-12);
  EXPECT_NEAR(rotation(turn({1, 0, 0}, {-1, 0, 0}), 0.0, 1.0), std::numbers::pi, 1e-12);
  EXPECT_NEAR(rotation(turn({0, 1, 0}, {1, 0, 0}), 0.0, 1.0), -std::numbers::pi / 2, 1e-12);
}

TEST(Motion, OrientationAxisOfRectangleIsLongSide) {
  bool undirected = false;
  const Vec2 a = orientation_axis(AABox::rect(0, 0, 10, 2), &undirected);
  EXPECT_TRUE(undirected);
  EXPECT_NEAR(std::abs(a.x), 1.0, 1e-9);
  EXPECT_NEAR(a.y, 0.0, 1e-9);
  const Vec2 b = orientation_axis(OrientedPoint{{0, 0, 0}, {0, 1, 0}}, &undirected);
  EXPECT_FALSE(undirected);
  EXPECT_NEAR(b.y, 1.0, 1e-12);
}

TEST(Scene, TimelineIsUnionOfSampleTimes) {
  std::vector<SceneTrack> tracks;
  tracks.push_back(track("a", SpaceTimeHistory({{0.0, Point3{}}, {1.0, Point3{}}})));
  tracks.push_back(track("b", SpaceTimeHistory({{0.5, Point3{}}, {1.0, Point3{}}, {2.0, Point3{}}})));
  tracks.push_back(track("wall", SpaceTimeHistory::constant(AABox::rect(0, 0, 1, 1))));
  const SceneRecording s(std::move(tracks));
  EXPECT_EQ(s.frame_times(), (std::vector<double>{0.0, 0.5, 1.0, 2.0}));
  EXPECT_NE(s.at_frame("a", 0), nullptr);
  EXPECT_EQ(s.at_frame("a", 1), nullptr);
  EXPECT_NE(s.at_frame("wall", 3), nullptr);
  EXPECT_EQ(code_of([&] { s.track("nope"); }), Errc::UnknownObject);
}

TEST(Scene, RejectsDuplicatesAndDanglingParents) {
  std::vector<SceneTrack> dup;
  dup.push_back(track("a", SpaceTimeHistory::constant(Point3{})));
  dup.push_back(track("a", SpaceTimeHistory::constant(Point3{})));
  EXPECT_THROW(SceneRecording{std::move(dup)}, Error);

  std::vector<SceneTrack> orphan;
  auto t = track("ghost/hand_left", SpaceTimeHistory::constant(Point3{}), ObjectKind::body_part);
  t.object.parent = "ghost";
  orphan.push_back(std::move(t));
  EXPECT_THROW(SceneRecording{std::move(orphan)}, Error);
}

TEST(Scene, BuildFromFramesDropsLowConfidenceJoints) {
  std::vector<SceneFrame> frames;
  for (int k = 0; k < 3; ++k) {
    SceneFrame f;
    f.t = k * 0.1;
    BodyPose p{"p1", {}};
    p.joints["spine_base"] = {{0.1 * k, 0, 1}, 1.0};
    p.joints["hand_right"] = {{0.3, 0, 1}, k == 1 ? 0.1 : 0.9};
    f.persons.push_back(p);
    f.objects.push_back({"cup", "cup", ObjectKind::object, AABox::cuboid({0, 0, 0}, {0.1, 0.1, 0.1})});
    frames.push_back(f);
  }
  const SceneRecording s = build_scene(frames);
  ASSERT_TRUE(s.has("p1"));
  ASSERT_TRUE(s.has(body_part_id("p1", "hand_right")));
  EXPECT_EQ(s.track("p1/hand_right").object.parent, std::optional<std::string>("p1"));
  EXPECT_EQ(s.track("p1/hand_right").history.samples().size(), 2u);
  EXPECT_NEAR(position(s, "p1", 0.2).x, 0.2, 1e-12);
  EXPECT_EQ(s.ids_of_kind(ObjectKind::person), std::vector<std::string>{"p1"});
}

TEST(Scene, TimeReversalMirrorsTimestamps) {
  std::vector<SceneTrack> tracks;
  tracks.push_back(track("a", SpaceTimeHistory({{1.0, Point3{0, 0, 0}}, {2.0, Point3{1, 0, 0}}, {4.0, Point3{3, 0, 0}}})));
  const SceneRecording s(std::move(tracks));
  const SceneRecording r = time_reversed(s);
  EXPECT_EQ(r.frame_times(), (std::vector<double>{1.0, 3.0, 4.0}));
  // A time t maps to 5 - t.
  for (double t : {1.0, 2.0, 2.5, 4.0}) EXPECT_NEAR(position(r, "a", 5.0 - t).x, position(s, "a", t).x, 1e-12);
}

TEST(Scene, InterpolateSnapsOnStructureMismatch) {
  const Polyline a{{{0, 0, 0}, {1, 0, 0}}};
  const Polyline b{{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}};
  EXPECT_EQ(std::get<Polyline>(interpolate(a, b, 0.2)).vertices.size(), 2u);
  EXPECT_EQ(std::get<Polyline>(interpolate(a, b, 0.8)).vertices.size(), 3u);
}
