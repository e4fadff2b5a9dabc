#pragma once

#include <cmath>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "scenesem/error.hpp"

namespace scenesem {

/// Module-wide tolerance for geometric predicates, in meters.
inline constexpr double kGeomEps = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(Vec3, Vec3) = default;
};

using Point2 = Vec2;
using Point3 = Vec3;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec2 xy(Vec3 a) { return {a.x, a.y}; }
inline Vec3 lift(Vec2 a, double z = 0.0) { return {a.x, a.y, z}; }
inline Vec2 lerp(Vec2 a, Vec2 b, double s) { return a + s * (b - a); }
inline Vec3 lerp(Vec3 a, Vec3 b, double s) { return a + s * (b - a); }

/// Returns a / |a|; throws ZeroVector when |a| is below kGeomEps.
Vec3 normalized(Vec3 a);
Vec2 normalized(Vec2 a);

struct OrientedPoint {
  Point3 p;
  Vec3 v;  // unit
};

struct Segment {
  Point3 p1;
  Point3 p2;
};

struct Polyline {
  std::vector<Point3> vertices;
};

/// Simple polygon in the floor plane. Vertices are stored counter-clockwise;
/// instances are produced by validate_polygon so the invariant always holds.
class Polygon2 {
 public:
  const std::vector<Point2>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  double area() const noexcept { return area_; }

  friend bool operator==(const Polygon2&, const Polygon2&) = default;

 private:
  friend Polygon2 validate_polygon(std::span<const Point2> vertices);
  std::vector<Point2> vertices_;
  double area_ = 0.0;
};

/// Axis-aligned rectangle (dim == 2, z ignored) or cuboid (dim == 3).
struct AABox {
  int dim = 2;
  Vec3 min;
  Vec3 max;

  static AABox rect(double x0, double y0, double x1, double y1) {
    return {2, {x0, y0, 0.0}, {x1, y1, 0.0}};
  }
  static AABox cuboid(Vec3 lo, Vec3 hi) { return {3, lo, hi}; }

  double lo(int axis) const { return axis == 0 ? min.x : axis == 1 ? min.y : min.z; }
  double hi(int axis) const { return axis == 0 ? max.x : axis == 1 ? max.y : max.z; }
  Point3 center() const { return 0.5 * (min + max); }
};

/// Circle (dim == 2) or sphere (dim == 3).
struct Sphere {
  int dim = 3;
  Point3 center;
  double radius = 0.0;

  static Sphere circle(double cx, double cy, double r) { return {2, {cx, cy, 0.0}, r}; }
  static Sphere ball(Point3 c, double r) { return {3, c, r}; }
};

struct TimeInterval {
  double t1;
  double t2;

  /// Throws BadInterval unless t1 < t2 and both are finite.
  TimeInterval(double start, double end);

  double duration() const noexcept { return t2 - t1; }
  bool contains(double t, double eps = 0.0) const noexcept {
    return t >= t1 - eps && t <= t2 + eps;
  }
  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

using SpatialEntity =
    std::variant<Point2, Point3, OrientedPoint, Segment, Polyline, Polygon2, AABox, Sphere>;

enum class EntityKind {
  point2,
  point3,
  oriented_point,
  segment,
  polyline,
  polygon,
  rect,
  cuboid,
  circle,
  sphere,
};

EntityKind kind_of(const SpatialEntity& e);
std::string_view kind_name(EntityKind kind);

/// True for entities living in the floor plane (2D points, polygons,
/// rectangles, circles).
bool is_planar(const SpatialEntity& e);
/// True for entities with interior (polygons, boxes, circles, spheres).
bool is_region(const SpatialEntity& e);
/// True for zero-extent entities (points, oriented points).
bool is_point_like(const SpatialEntity& e);

/// Checks the type invariants; throws InvalidEntity with a reason.
void validate(const SpatialEntity& e);

/// Orients the ring counter-clockwise and rejects self-intersecting or
/// zero-area chains.
Polygon2 validate_polygon(std::span<const Point2> vertices);
Polygon2 polygon_from_rect(const AABox& rect);

/// Minimum Euclidean distance between the closed point sets. Mixed planar /
/// spatial pairs are compared after dropping z from the spatial operand.
double distance(const SpatialEntity& a, const SpatialEntity& b);

/// Length, area or volume depending on the entity's dimension; 0 for points.
double size(const SpatialEntity& e);

/// Unsigned angle in [0, pi] between direction-carrying entities
/// (oriented points and segments).
double angle_between(const SpatialEntity& a, const SpatialEntity& b);
double angle_between(Vec3 a, Vec3 b);

/// Direction of an oriented point or segment; throws for other kinds.
Vec3 direction_of(const SpatialEntity& e);

struct FloorProjection {
  SpatialEntity entity;
  bool degenerate = false;
};

FloorProjection project_to_floor(const SpatialEntity& e);

/// Area centroid for regions, length-weighted midpoint for chains.
Point3 centroid(const SpatialEntity& e);
SpatialEntity translate(const SpatialEntity& e, Vec3 offset);

// ---------------------------------------------------------------------------
// Planar kernel shared with the calculi.

enum class PointLocation { outside, boundary, inside };

double point_segment_distance(Point2 p, Point2 a, Point2 b);
double point_segment_distance(Point3 p, Point3 a, Point3 b);
double segment_segment_distance(Point2 a1, Point2 a2, Point2 b1, Point2 b2);
double segment_segment_distance(Point3 a1, Point3 a2, Point3 b1, Point3 b2);
bool segments_intersect(Point2 a1, Point2 a2, Point2 b1, Point2 b2, double eps = kGeomEps);

/// Distance from p to the boundary ring.
double ring_boundary_distance(Point2 p, std::span<const Point2> ring);
/// Classifies p against a closed ring; points within eps of an edge are
/// reported as boundary.
PointLocation locate_in_ring(Point2 p, std::span<const Point2> ring, double eps = kGeomEps);
/// Negative inside, positive outside.
double signed_ring_distance(Point2 p, std::span<const Point2> ring);
double signed_area(std::span<const Point2> ring);

}  // namespace scenesem
