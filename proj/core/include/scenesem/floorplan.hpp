#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenesem/geometry.hpp"
#include "scenesem/point_cloud.hpp"
#include "scenesem/sth.hpp"

namespace scenesem {

struct FloorplanConfig {
  std::size_t k_neighbors = 32;       // on the voxel-downsampled cloud
  double angle_tol_deg = 5.0;         // region growing normal deviation
  double dist_tol = 0.02;             // m, point-to-plane distance; voxel cell is twice this
  double min_inliers = 500.0;         // raw points per plane
  double vertical_tol_deg = 10.0;     // wall normals within this of horizontal
  double min_height = 1.8;            // m
  std::optional<double> ceiling_z;    // m; detected when unset
  double ceiling_gap = 0.3;           // m
  double eps_angle_deg = 10.0;        // stage-1 clustering radius
  double eps_offset = 0.25;           // m, stage-2 clustering radius
  std::size_t min_pts = 1;
  double min_coverage = 0.6;
  double min_dim = 1.0;               // m
  double corridor_aspect = 3.0;
  double perpendicular_tol_deg = 10.0;
  bool downsample = true;
};

/// Throws ConfigError on out-of-range values.
void validate(const FloorplanConfig& cfg);

struct PlanarRegion {
  Vec3 normal;
  Point3 centroid;
  double weight = 0.0;  // raw point count
  double rms = 0.0;
  std::vector<std::uint32_t> inliers;
};

/// Greedy region growing over the k-neighbourhood graph, seeded at the
/// flattest unassigned point.
std::vector<PlanarRegion> detect_planes(const NormalEstimate& est, const FloorplanConfig& cfg);

struct WallSegment {
  Point3 centroid;
  Vec3 normal;  // horizontal unit
  double height = 0.0;
  double width = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;
  double weight = 0.0;
  Point2 a;  // footprint endpoints
  Point2 b;
};

/// Vertical planes that are tall enough or reach the ceiling.
std::vector<WallSegment> wall_candidates(const PointCloud& cloud, const std::vector<PlanarRegion>& planes,
                                         const FloorplanConfig& cfg);

/// Footprint orientation in [0, pi).
double wall_angle(const WallSegment& w);

/// Two-stage clustering: orientation mod pi, then perpendicular offset.
std::vector<std::vector<std::size_t>> cluster_walls(const std::vector<WallSegment>& walls,
                                                    const FloorplanConfig& cfg);

struct WallLine {
  Point2 point;
  Vec2 dir;  // unit, angle in [0, pi)
  std::vector<std::size_t> members;
  double residual = 0.0;  // weighted RMS, m
  double s_min = 0.0;     // member extent along dir from point
  double s_max = 0.0;

  double angle() const;
};

std::vector<WallLine> fit_lines(const std::vector<WallSegment>& walls,
                                const std::vector<std::vector<std::size_t>>& clusters);

enum class StructureType { room, corridor };
std::string_view label(StructureType t);

struct FloorPlanStructure {
  std::string id;
  StructureType type = StructureType::room;
  std::array<Point2, 4> corners;  // counter-clockwise
  std::array<double, 4> side_coverage{};  // side k runs corners[k] -> corners[k+1]
  double coverage = 0.0;
  Vec2 major_axis;  // unit, angle in [0, pi)
  std::array<int, 4> side_lines{-1, -1, -1, -1};

  Polygon2 polygon() const;
  Point2 center() const;
  double length() const;  // along the major axis
  double width() const;
};

struct FloorPlan {
  std::vector<FloorPlanStructure> structures;
  std::vector<std::pair<std::string, std::string>> adjacency;  // sorted, first < second
  std::vector<std::string> warnings;

  const FloorPlanStructure* find(std::string_view id) const;
};

/// Rectangles bounded by two pairs of near-perpendicular wall lines, accepted
/// greedily by perimeter coverage. An empty plan carries a NoRoomsFound warning.
FloorPlan extract_rooms(const std::vector<WallLine>& lines, const std::vector<WallSegment>& walls,
                        const FloorplanConfig& cfg);

/// Structure containing p; ties go to the nearest center, then the smaller id.
std::optional<std::string> locate(Point2 p, const FloorPlan& plan);

struct FloorplanResult {
  FloorPlan plan;
  std::vector<WallSegment> walls;
  std::vector<WallLine> lines;
  std::size_t input_points = 0;
  std::size_t samples = 0;  // after downsampling
  std::size_t planes = 0;
};

FloorplanResult extract_floorplan(const PointCloud& cloud, const FloorplanConfig& cfg);

nlohmann::ordered_json to_json(const FloorPlan& plan);
/// Throws ParseError on malformed input.
FloorPlan floorplan_from_json(const nlohmann::json& j);

/// Plot of wall footprints, fitted lines and accepted rectangles.
std::string debug_svg(const FloorplanResult& result);

/// Static floorplan_structure tracks for use in scenes.
std::vector<SceneTrack> structure_tracks(const FloorPlan& plan);

}  // namespace scenesem
