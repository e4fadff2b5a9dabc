#include "scenesem/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

namespace scenesem {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidEntity: return "InvalidEntity";
    case Errc::SelfIntersecting: return "SelfIntersecting";
    case Errc::DegenerateArea: return "DegenerateArea";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::UnsupportedEntityKind: return "UnsupportedEntityKind";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DegenerateLine: return "DegenerateLine";
    case Errc::CoincidentPositions: return "CoincidentPositions";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BadInterval: return "BadInterval";
    case Errc::NoSignificantMotion: return "NoSignificantMotion";
    case Errc::OrientationUndefined: return "OrientationUndefined";
    case Errc::UnknownObject: return "UnknownObject";
    case Errc::UnknownFluentName: return "UnknownFluentName";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::UnknownInteraction: return "UnknownInteraction";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::NoRoomsFound: return "NoRoomsFound";
    case Errc::TrackOutsideStructure: return "TrackOutsideStructure";
    case Errc::UnknownStructure: return "UnknownStructure";
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

constexpr double kMinPolygonArea = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite(Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }
bool finite(Vec3 p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

[[noreturn]] void invalid(const std::string& why) { throw Error(Errc::InvalidEntity, why); }

std::vector<Point2> rect_ring(const AABox& b) {
  return {{b.min.x, b.min.y}, {b.max.x, b.min.y}, {b.max.x, b.max.y}, {b.min.x, b.max.y}};
}

// -- planar distance --------------------------------------------------------

struct Shape2 {
  enum class Type { point, chain, ring, disk } type;
  std::vector<Point2> pts;
  Point2 center;
  double radius = 0.0;
};

Shape2 to_shape2(const SpatialEntity& e) {
  return std::visit(
      overloaded{
          [](const Point2& p) { return Shape2{Shape2::Type::point, {p}, p, 0.0}; },
          [](const Point3& p) { return Shape2{Shape2::Type::point, {xy(p)}, xy(p), 0.0}; },
          [](const OrientedPoint& o) {
            return Shape2{Shape2::Type::point, {xy(o.p)}, xy(o.p), 0.0};
          },
          [](const Segment& s) {
            return Shape2{Shape2::Type::chain, {xy(s.p1), xy(s.p2)}, {}, 0.0};
          },
          [](const Polyline& l) {
            Shape2 s{Shape2::Type::chain, {}, {}, 0.0};
            for (const auto& v : l.vertices) s.pts.push_back(xy(v));
            return s;
          },
          [](const Polygon2& p) { return Shape2{Shape2::Type::ring, p.vertices(), {}, 0.0}; },
          [](const AABox& b) { return Shape2{Shape2::Type::ring, rect_ring(b), {}, 0.0}; },
          [](const Sphere& s) {
            return Shape2{Shape2::Type::disk, {}, xy(s.center), s.radius};
          },
      },
      e);
}

std::size_t edge_count(const Shape2& s) {
  if (s.type == Shape2::Type::ring) return s.pts.size();
  return s.pts.size() - 1;
}

std::pair<Point2, Point2> edge(const Shape2& s, std::size_t i) {
  return {s.pts[i], s.pts[(i + 1) % s.pts.size()]};
}

double point_to_shape(Point2 p, const Shape2& s) {
  switch (s.type) {
    case Shape2::Type::point:
      return norm(p - s.pts.front());
    case Shape2::Type::disk:
      return std::max(0.0, norm(p - s.center) - s.radius);
    case Shape2::Type::ring:
      if (locate_in_ring(p, s.pts, 0.0) != PointLocation::outside) return 0.0;
      [[fallthrough]];
    case Shape2::Type::chain: {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < edge_count(s); ++i) {
        auto [a, b] = edge(s, i);
        best = std::min(best, point_segment_distance(p, a, b));
      }
      return best;
    }
  }
  return 0.0;
}

double shape_distance(const Shape2& a, const Shape2& b) {
  using T = Shape2::Type;
  if (a.type == T::disk) return std::max(0.0, point_to_shape(a.center, b) - a.radius);
  if (b.type == T::disk) return std::max(0.0, point_to_shape(b.center, a) - b.radius);
  if (a.type == T::point) return point_to_shape(a.pts.front(), b);
  if (b.type == T::point) return point_to_shape(b.pts.front(), a);

  // Containment of one outline by a ring makes the closed sets intersect
  // even when no edges cross.
  if (a.type == T::ring && locate_in_ring(b.pts.front(), a.pts, 0.0) != PointLocation::outside)
    return 0.0;
  if (b.type == T::ring && locate_in_ring(a.pts.front(), b.pts, 0.0) != PointLocation::outside)
    return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < edge_count(a); ++i) {
    auto [a1, a2] = edge(a, i);
    for (std::size_t j = 0; j < edge_count(b); ++j) {
      auto [b1, b2] = edge(b, j);
      best = std::min(best, segment_segment_distance(a1, a2, b1, b2));
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

// -- spatial distance -------------------------------------------------------

struct Shape3 {
  enum class Type { point, chain, box, ball } type;
  std::vector<Point3> pts;
  Vec3 lo, hi;
  double radius = 0.0;
};

Shape3 to_shape3(const SpatialEntity& e) {
  return std::visit(
      overloaded{
          [](const Point3& p) { return Shape3{Shape3::Type::point, {p}, {}, {}, 0.0}; },
          [](const OrientedPoint& o) { return Shape3{Shape3::Type::point, {o.p}, {}, {}, 0.0}; },
          [](const Segment& s) { return Shape3{Shape3::Type::chain, {s.p1, s.p2}, {}, {}, 0.0}; },
          [](const Polyline& l) { return Shape3{Shape3::Type::chain, l.vertices, {}, {}, 0.0}; },
          [](const AABox& b) { return Shape3{Shape3::Type::box, {}, b.min, b.max, 0.0}; },
          [](const Sphere& s) { return Shape3{Shape3::Type::ball, {s.center}, {}, {}, s.radius}; },
          [](const auto&) -> Shape3 {
            throw Error(Errc::UnsupportedEntityKind, "planar entity in spatial distance");
          },
      },
      e);
}

double point_box_distance(Point3 p, Vec3 lo, Vec3 hi) {
  const double dx = std::max({lo.x - p.x, 0.0, p.x - hi.x});
  const double dy = std::max({lo.y - p.y, 0.0, p.y - hi.y});
  const double dz = std::max({lo.z - p.z, 0.0, p.z - hi.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Slab clipping; true when the closed segment meets the closed box.
bool segment_hits_box(Point3 a, Point3 b, Vec3 lo, Vec3 hi) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double pa[3] = {a.x, a.y, a.z};
  const double d[3] = {b.x - a.x, b.y - a.y, b.z - a.z};
  const double l[3] = {lo.x, lo.y, lo.z};
  const double h[3] = {hi.x, hi.y, hi.z};
  for (int k = 0; k < 3; ++k) {
    if (std::abs(d[k]) < 1e-300) {
      if (pa[k] < l[k] || pa[k] > h[k]) return false;
      continue;
    }
    double u0 = (l[k] - pa[k]) / d[k];
    double u1 = (h[k] - pa[k]) / d[k];
    if (u0 > u1) std::swap(u0, u1);
    t0 = std::max(t0, u0);
    t1 = std::min(t1, u1);
    if (t0 > t1) return false;
  }
  return true;
}

double segment_box_distance(Point3 a, Point3 b, Vec3 lo, Vec3 hi) {
  if (segment_hits_box(a, b, lo, hi)) return 0.0;
  double best = std::min(point_box_distance(a, lo, hi), point_box_distance(b, lo, hi));
  // Remaining candidates: closest point on a box edge.
  const Vec3 c[8] = {
      {lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {lo.x, hi.y, lo.z}, {hi.x, hi.y, lo.z},
      {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {lo.x, hi.y, hi.z}, {hi.x, hi.y, hi.z},
  };
  static constexpr int kEdges[12][2] = {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {0, 2}, {1, 3},
                                        {4, 6}, {5, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
  for (const auto& e : kEdges) best = std::min(best, segment_segment_distance(a, b, c[e[0]], c[e[1]]));
  return best;
}

double point_to_shape3(Point3 p, const Shape3& s) {
  switch (s.type) {
    case Shape3::Type::point: return norm(p - s.pts.front());
    case Shape3::Type::ball: return std::max(0.0, norm(p - s.pts.front()) - s.radius);
    case Shape3::Type::box: return point_box_distance(p, s.lo, s.hi);
    case Shape3::Type::chain: {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < s.pts.size(); ++i)
        best = std::min(best, point_segment_distance(p, s.pts[i], s.pts[i + 1]));
      return best;
    }
  }
  return 0.0;
}

double shape3_distance(const Shape3& a, const Shape3& b) {
  using T = Shape3::Type;
  if (a.type == T::ball) return std::max(0.0, point_to_shape3(a.pts.front(), b) - a.radius);
  if (b.type == T::ball) return std::max(0.0, point_to_shape3(b.pts.front(), a) - b.radius);
  if (a.type == T::point) return point_to_shape3(a.pts.front(), b);
  if (b.type == T::point) return point_to_shape3(b.pts.front(), a);
  if (a.type == T::box && b.type == T::box) {
    const double dx = std::max({a.lo.x - b.hi.x, 0.0, b.lo.x - a.hi.x});
    const double dy = std::max({a.lo.y - b.hi.y, 0.0, b.lo.y - a.hi.y});
    const double dz = std::max({a.lo.z - b.hi.z, 0.0, b.lo.z - a.hi.z});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  const Shape3& chain = a.type == T::chain ? a : b;
  const Shape3& other = a.type == T::chain ? b : a;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < chain.pts.size(); ++i) {
    if (other.type == T::box) {
      best = std::min(best, segment_box_distance(chain.pts[i], chain.pts[i + 1], other.lo, other.hi));
    } else {
      for (std::size_t j = 0; j + 1 < other.pts.size(); ++j)
        best = std::min(best, segment_segment_distance(chain.pts[i], chain.pts[i + 1],
                                                       other.pts[j], other.pts[j + 1]));
    }
  }
  return best;
}

double polyline_length(const std::vector<Point3>& v) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) len += norm(v[i + 1] - v[i]);
  return len;
}

}  // namespace

// ---------------------------------------------------------------------------

Vec3 normalized(Vec3 a) {
  const double n = norm(a);
  if (!(n >= kGeomEps)) throw Error(Errc::ZeroVector, "cannot normalize a zero-length vector");
  return (1.0 / n) * a;
}

Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  if (!(n >= kGeomEps)) throw Error(Errc::ZeroVector, "cannot normalize a zero-length vector");
  return (1.0 / n) * a;
}

TimeInterval::TimeInterval(double start, double end) : t1(start), t2(end) {
  if (!std::isfinite(start) || !std::isfinite(end) || !(start < end))
    throw Error(Errc::BadInterval,
                "interval needs t1 < t2 (got " + std::to_string(start) + ", " + std::to_string(end) + ")");
}

EntityKind kind_of(const SpatialEntity& e) {
  return std::visit(overloaded{
                        [](const Point2&) { return EntityKind::point2; },
                        [](const Point3&) { return EntityKind::point3; },
                        [](const OrientedPoint&) { return EntityKind::oriented_point; },
                        [](const Segment&) { return EntityKind::segment; },
                        [](const Polyline&) { return EntityKind::polyline; },
                        [](const Polygon2&) { return EntityKind::polygon; },
                        [](const AABox& b) { return b.dim == 2 ? EntityKind::rect : EntityKind::cuboid; },
                        [](const Sphere& s) { return s.dim == 2 ? EntityKind::circle : EntityKind::sphere; },
                    },
                    e);
}

std::string_view kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::point2: return "point2";
    case EntityKind::point3: return "point3";
    case EntityKind::oriented_point: return "oriented_point";
    case EntityKind::segment: return "segment";
    case EntityKind::polyline: return "polyline";
    case EntityKind::polygon: return "polygon";
    case EntityKind::rect: return "rect";
    case EntityKind::cuboid: return "cuboid";
    case EntityKind::circle: return "circle";
    case EntityKind::sphere: return "sphere";
  }
  return "?";
}

bool is_planar(const SpatialEntity& e) {
  switch (kind_of(e)) {
    case EntityKind::point2:
    case EntityKind::polygon:
    case EntityKind::rect:
    case EntityKind::circle:
      return true;
    default:
      return false;
  }
}

bool is_region(const SpatialEntity& e) {
  switch (kind_of(e)) {
    case EntityKind::polygon:
    case EntityKind::rect:
    case EntityKind::cuboid:
    case EntityKind::circle:
    case EntityKind::sphere:
      return true;
    default:
      return false;
  }
}

bool is_point_like(const SpatialEntity& e) {
  const auto k = kind_of(e);
  return k == EntityKind::point2 || k == EntityKind::point3 || k == EntityKind::oriented_point;
}

void validate(const SpatialEntity& e) {
  std::visit(
      overloaded{
          [](const Point2& p) {
            if (!finite(p)) invalid("point has non-finite coordinates");
          },
          [](const Point3& p) {
            if (!finite(p)) invalid("point has non-finite coordinates");
          },
          [](const OrientedPoint& o) {
            if (!finite(o.p) || !finite(o.v)) invalid("oriented point has non-finite values");
            if (std::abs(norm(o.v) - 1.0) > 1e-9) invalid("oriented point direction is not unit length");
          },
          [](const Segment& s) {
            if (!finite(s.p1) || !finite(s.p2)) invalid("segment has non-finite coordinates");
            if (s.p1 == s.p2) invalid("segment endpoints coincide");
          },
          [](const Polyline& l) {
            const auto& v = l.vertices;
            if (v.size() < 2) invalid("polyline needs at least two vertices");
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (!finite(v[i])) invalid("polyline has non-finite coordinates");
              if (i > 0 && v[i] == v[i - 1]) invalid("polyline repeats a vertex");
            }
            for (std::size_t i = 0; i + 1 < v.size(); ++i) {
              if (norm(xy(v[i + 1] - v[i])) < kGeomEps) continue;
              for (std::size_t j = i + 2; j + 1 < v.size(); ++j) {
                if (norm(xy(v[j + 1] - v[j])) < kGeomEps) continue;
                if (segments_intersect(xy(v[i]), xy(v[i + 1]), xy(v[j]), xy(v[j + 1])))
                  invalid("polyline floor projection self-intersects");
              }
            }
          },
          [](const Polygon2&) {},
          [](const AABox& b) {
            if (b.dim != 2 && b.dim != 3) invalid("box dimension must be 2 or 3");
            if (!finite(b.min) || !finite(b.max)) invalid("box has non-finite coordinates");
            for (int k = 0; k < b.dim; ++k)
              if (!(b.lo(k) < b.hi(k))) invalid("box needs min < max on every axis");
          },
          [](const Sphere& s) {
            if (s.dim != 2 && s.dim != 3) invalid("sphere dimension must be 2 or 3");
            if (!finite(s.center) || !std::isfinite(s.radius)) invalid("sphere has non-finite values");
            if (!(s.radius > 0.0)) invalid("radius must be positive");
          },
      },
      e);
}

double signed_area(std::span<const Point2> ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) twice += cross(ring[i], ring[(i + 1) % ring.size()]);
  return 0.5 * twice;
}

Polygon2 validate_polygon(std::span<const Point2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw Error(Errc::DegenerateArea, "polygon needs at least three vertices");
  for (const auto& p : vertices)
    if (!finite(p)) throw Error(Errc::InvalidEntity, "polygon has non-finite coordinates");
  for (std::size_t i = 0; i < n; ++i)
    if (vertices[i] == vertices[(i + 1) % n])
      throw Error(Errc::SelfIntersecting, "polygon repeats vertex " + std::to_string(i));

  // Non-adjacent edges must be disjoint.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n]))
        throw Error(Errc::SelfIntersecting,
                    "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  }

  const double area = signed_area(vertices);
  if (std::abs(area) < kMinPolygonArea) throw Error(Errc::DegenerateArea, "polygon area is zero");

  // Adjacent edges may only share their common vertex.
  if (n > 3) {
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a = vertices[i];
      const Point2 b = vertices[(i + 1) % n];
      const Point2 c = vertices[(i + 2) % n];
      if (point_segment_distance(c, a, b) < kGeomEps || point_segment_distance(a, b, c) < kGeomEps)
        throw Error(Errc::SelfIntersecting, "polygon folds back at vertex " + std::to_string((i + 1) % n));
    }
  }

  Polygon2 poly;
  poly.vertices_.assign(vertices.begin(), vertices.end());
  if (area < 0.0) std::reverse(poly.vertices_.begin(), poly.vertices_.end());
  poly.area_ = std::abs(area);
  return poly;
}

Polygon2 polygon_from_rect(const AABox& rect) {
  const auto ring = rect_ring(rect);
  return validate_polygon(ring);
}

double distance(const SpatialEntity& a, const SpatialEntity& b) {
  validate(a);
  validate(b);
  // Evaluate in a canonical operand order so swapped calls are bit-identical.
  const bool swap = a.index() > b.index() ||
                    (a.index() == b.index() && static_cast<int>(kind_of(a)) > static_cast<int>(kind_of(b)));
  const SpatialEntity& lhs = swap ? b : a;
  const SpatialEntity& rhs = swap ? a : b;
  const bool same_kind = kind_of(lhs) == kind_of(rhs);

  if (is_planar(lhs) || is_planar(rhs)) {
    const Shape2 sa = to_shape2(lhs);
    const Shape2 sb = to_shape2(rhs);
    const double d = shape_distance(sa, sb);
    return same_kind ? std::min(d, shape_distance(sb, sa)) : d;
  }
  const Shape3 sa = to_shape3(lhs);
  const Shape3 sb = to_shape3(rhs);
  const double d = shape3_distance(sa, sb);
  return same_kind ? std::min(d, shape3_distance(sb, sa)) : d;
}

double size(const SpatialEntity& e) {
  validate(e);
  return std::visit(overloaded{
                        [](const Point2&) { return 0.0; },
                        [](const Point3&) { return 0.0; },
                        [](const OrientedPoint&) { return 0.0; },
                        [](const Segment& s) { return norm(s.p2 - s.p1); },
                        [](const Polyline& l) { return polyline_length(l.vertices); },
                        [](const Polygon2& p) { return p.area(); },
                        [](const AABox& b) {
                          double v = 1.0;
                          for (int k = 0; k < b.dim; ++k) v *= b.hi(k) - b.lo(k);
                          return v;
                        },
                        [](const Sphere& s) {
                          return s.dim == 2 ? std::numbers::pi * s.radius * s.radius
                                            : 4.0 / 3.0 * std::numbers::pi * s.radius * s.radius * s.radius;
                        },
                    },
                    e);
}

double angle_between(Vec3 a, Vec3 b) {
  if (!(norm(a) >= kGeomEps) || !(norm(b) >= kGeomEps))
    throw Error(Errc::ZeroVector, "angle needs two non-zero direction vectors");
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

Vec3 direction_of(const SpatialEntity& e) {
  if (const auto* o = std::get_if<OrientedPoint>(&e)) return o->v;
  if (const auto* s = std::get_if<Segment>(&e)) return s->p2 - s->p1;
  throw Error(Errc::UnsupportedEntityKind,
              std::string("no direction for ") + std::string(kind_name(kind_of(e))));
}

double angle_between(const SpatialEntity& a, const SpatialEntity& b) {
  return angle_between(direction_of(a), direction_of(b));
}

FloorProjection project_to_floor(const SpatialEntity& e) {
  validate(e);
  return std::visit(
      overloaded{
          [](const Point2& p) { return FloorProjection{p, false}; },
          [](const Point3& p) { return FloorProjection{xy(p), false}; },
          [](const OrientedPoint& o) { return FloorProjection{xy(o.p), false}; },
          [](const Segment& s) {
            if (norm(xy(s.p2 - s.p1)) < kGeomEps) return FloorProjection{xy(s.p1), true};
            return FloorProjection{Segment{lift(xy(s.p1)), lift(xy(s.p2))}, false};
          },
          [](const Polyline& l) {
            Polyline flat;
            for (const auto& v : l.vertices) {
              const Point3 f = lift(xy(v));
              if (flat.vertices.empty() || norm(f - flat.vertices.back()) >= kGeomEps) flat.vertices.push_back(f);
            }
            if (flat.vertices.size() < 2) return FloorProjection{xy(l.vertices.front()), true};
            if (flat.vertices.size() == 2)
              return FloorProjection{Segment{flat.vertices[0], flat.vertices[1]}, false};
            return FloorProjection{std::move(flat), false};
          },
          [](const Polygon2& p) { return FloorProjection{p, false}; },
          [](const AABox& b) {
            return FloorProjection{AABox::rect(b.min.x, b.min.y, b.max.x, b.max.y), false};
          },
          [](const Sphere& s) {
            return FloorProjection{Sphere::circle(s.center.x, s.center.y, s.radius), false};
          },
      },
      e);
}

Point3 centroid(const SpatialEntity& e) {
  return std::visit(overloaded{
                        [](const Point2& p) { return lift(p); },
                        [](const Point3& p) { return p; },
                        [](const OrientedPoint& o) { return o.p; },
                        [](const Segment& s) { return 0.5 * (s.p1 + s.p2); },
                        [](const Polyline& l) {
                          const double len = polyline_length(l.vertices);
                          if (len <= 0.0) return l.vertices.front();
                          Vec3 acc;
                          for (std::size_t i = 0; i + 1 < l.vertices.size(); ++i) {
                            const double w = norm(l.vertices[i + 1] - l.vertices[i]);
                            acc = acc + (0.5 * w) * (l.vertices[i] + l.vertices[i + 1]);
                          }
                          return (1.0 / len) * acc;
                        },
                        [](const Polygon2& p) {
                          const auto& v = p.vertices();
                          // Shift to the first vertex to keep the sums well conditioned.
                          const Point2 o = v.front();
                          double cx = 0.0, cy = 0.0, a2 = 0.0;
                          for (std::size_t i = 0; i < v.size(); ++i) {
                            const Point2 a = v[i] - o;
                            const Point2 b = v[(i + 1) % v.size()] - o;
                            const double c = cross(a, b);
                            a2 += c;
                            cx += (a.x + b.x) * c;
                            cy += (a.y + b.y) * c;
                          }
                          return Point3{o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2), 0.0};
                        },
                        [](const AABox& b) { return b.center(); },
                        [](const Sphere& s) { return s.center; },
                    },
                    e);
}

SpatialEntity translate(const SpatialEntity& e, Vec3 d) {
  return std::visit(overloaded{
                        [&](const Point2& p) -> SpatialEntity { return p + xy(d); },
                        [&](const Point3& p) -> SpatialEntity { return p + d; },
                        [&](const OrientedPoint& o) -> SpatialEntity { return OrientedPoint{o.p + d, o.v}; },
                        [&](const Segment& s) -> SpatialEntity { return Segment{s.p1 + d, s.p2 + d}; },
                        [&](const Polyline& l) -> SpatialEntity {
                          Polyline out = l;
                          for (auto& v : out.vertices) v = v + d;
                          return out;
                        },
                        [&](const Polygon2& p) -> SpatialEntity {
                          std::vector<Point2> v = p.vertices();
                          for (auto& q : v) q = q + xy(d);
                          return validate_polygon(v);
                        },
                        [&](const AABox& b) -> SpatialEntity {
                          AABox out = b;
                          const Vec3 shift = b.dim == 2 ? Vec3{d.x, d.y, 0.0} : d;
                          out.min = b.min + shift;
                          out.max = b.max + shift;
                          return out;
                        },
                        [&](const Sphere& s) -> SpatialEntity {
                          Sphere out = s;
                          out.center = s.center + (s.dim == 2 ? Vec3{d.x, d.y, 0.0} : d);
                          return out;
                        },
                    },
                    e);
}

// ---------------------------------------------------------------------------

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(p - a);
  const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + s * ab));
}

double point_segment_distance(Point3 p, Point3 a, Point3 b) {
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(p - a);
  const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + s * ab));
}

namespace {
int orientation_sign(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}
}  // namespace

double segment_segment_distance(Point2 a1, Point2 a2, Point2 b1, Point2 b2) {
  const int o1 = orientation_sign(a1, a2, b1);
  const int o2 = orientation_sign(a1, a2, b2);
  const int o3 = orientation_sign(b1, b2, a1);
  const int o4 = orientation_sign(b1, b2, a2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return 0.0;
  return std::min({point_segment_distance(a1, b1, b2), point_segment_distance(a2, b1, b2),
                   point_segment_distance(b1, a1, a2), point_segment_distance(b2, a1, a2)});
}

double segment_segment_distance(Point3 p1, Point3 q1, Point3 p2, Point3 q2) {
  // Closest points of two segments (Ericson, Real-Time Collision Detection 5.1.9).
  const Vec3 d1 = q1 - p1;
  const Vec3 d2 = q2 - p2;
  const Vec3 r = p1 - p2;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  double s = 0.0;
  double t = 0.0;
  if (a <= 1e-300 && e <= 1e-300) return norm(p1 - p2);
  if (a <= 1e-300) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= 1e-300) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return norm((p1 + s * d1) - (p2 + t * d2));
}

bool segments_intersect(Point2 a1, Point2 a2, Point2 b1, Point2 b2, double eps) {
  return segment_segment_distance(a1, a2, b1, b2) <= eps;
}

double ring_boundary_distance(Point2 p, std::span<const Point2> ring) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ring.size(); ++i)
    best = std::min(best, point_segment_distance(p, ring[i], ring[(i + 1) % ring.size()]));
  return best;
}

PointLocation locate_in_ring(Point2 p, std::span<const Point2> ring, double eps) {
  if (ring_boundary_distance(p, ring) <= eps) return PointLocation::boundary;
  bool in = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point2 a = ring[i];
    const Point2 b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) in = !in;
    }
  }
  return in ? PointLocation::inside : PointLocation::outside;
}

double signed_ring_distance(Point2 p, std::span<const Point2> ring) {
  const double d = ring_boundary_distance(p, ring);
  if (d == 0.0) return 0.0;
  return locate_in_ring(p, ring, 0.0) == PointLocation::inside ? -d : d;
}

}  // namespace scenesem
