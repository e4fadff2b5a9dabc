#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scenesem/floorplan.hpp"
#include "scenesem/navrules.hpp"
#include "scenesem/point_cloud.hpp"
#include "scenesem/scene_io.hpp"

// Scripted scenes and clouds with known ground truth, used by the tests,
// the benchmarks and `scenesem synth`.
namespace scenesem::synth {

struct Keyframe {
  double t;
  Point3 p;
};
/// Piecewise-linear interpolation, clamped at both ends.
Point3 at(const std::vector<Keyframe>& keys, double t);

struct ExpectedEvent {
  std::string label;  // e.g. "reach_for(p1, bread)"
  double t1;
  double t2;
};

struct ActivityFixture {
  SceneFile scene;
  std::vector<ExpectedEvent> expected;  // in order
  double frame_period;
  /// Expected fluent boundaries by name, e.g. "approaching" -> {t1, t2}.
  std::vector<std::pair<std::string, std::array<double, 2>>> fluents;
};

/// A right hand moves onto a cup and stays in contact.
ActivityFixture approach_touch(double rate = 30.0);
/// Reach for the bread, lift it, carry it over the board, put it down and
/// move the hand back.
ActivityFixture sandwich(double rate = 30.0);

enum class Walker { empty, same_direction, opposing, loitering };
std::string_view label(Walker w);

struct NavFixture {
  FloorPlan plan;
  SceneFile scene;
  PlannedPath path;
  double t;
  bool expect_possible;
  std::vector<std::string> expect_blockers;  // for the corridor
};

/// room1 [-4,0]x[-1,3], corridor2 [0,10]x[0,2], room3 [10,14]x[-1,3].
FloorPlan corridor_plan();
/// The robot crosses west to east along y = 1; one pedestrian as named.
NavFixture corridor_walk(Walker w);

/// Random moving rectangle "a", static rectangle "b" and moving point "p",
/// sampled at 10 Hz for 4 s.
SceneRecording random_tracks(std::uint64_t seed);

struct TruthStructure {
  StructureType type;
  std::array<Point2, 4> corners;  // counter-clockwise
};
/// 4 x 6 m room next to a 2 x 10 m corridor sharing the wall x = 4, rotated
/// about the origin by `angle`.
std::vector<TruthStructure> room_corridor_truth(double angle = 0.0);

struct WallSpec {
  Point2 a;
  Point2 b;
  double z0;
  double z1;
};
struct SlabSpec {  // horizontal rectangle at height z
  double x0, y0, x1, y1, z;
};
/// Uniform samples at `density` points per square meter with isotropic
/// Gaussian noise `sigma`.
PointCloud sample_surfaces(const std::vector<WallSpec>& walls, const std::vector<SlabSpec>& slabs, double density,
                           double sigma, std::uint64_t seed);
/// Walls, floor and ceiling (2.5 m) of the room and corridor layout.
PointCloud room_corridor_cloud(double density = 2000.0, double sigma = 0.01, std::uint64_t seed = 7);
/// Uniform points in a box, no structure.
PointCloud noise_cloud(std::size_t n, std::uint64_t seed = 7);

/// Largest distance between corresponding corners under the best cyclic
/// alignment.
double corner_error(const std::array<Point2, 4>& a, const std::array<Point2, 4>& b);

}  // namespace scenesem::synth
