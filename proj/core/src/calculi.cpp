#include "scenesem/calculi.hpp"

#include <algorithm>
#include <cmath>

#include "scenesem/overlay.hpp"

namespace scenesem {

std::string_view label(Rcc8 r) {
  switch (r) {
    case Rcc8::dc: return "dc";
    case Rcc8::ec: return "ec";
    case Rcc8::po: return "po";
    case Rcc8::tpp: return "tpp";
    case Rcc8::ntpp: return "ntpp";
    case Rcc8::tppi: return "tppi";
    case Rcc8::ntppi: return "ntppi";
    case Rcc8::eq: return "eq";
  }
  return "?";
}

std::string_view label(Rcc5 r) {
  switch (r) {
    case Rcc5::dr: return "dr";
    case Rcc5::po: return "po";
    case Rcc5::pp: return "pp";
    case Rcc5::ppi: return "ppi";
    case Rcc5::eq: return "eq";
  }
  return "?";
}

std::string_view label(Allen r) {
  switch (r) {
    case Allen::before: return "before";
    case Allen::meets: return "meets";
    case Allen::overlaps: return "overlaps";
    case Allen::starts: return "starts";
    case Allen::during: return "during";
    case Allen::finishes: return "finishes";
    case Allen::equals: return "equals";
    case Allen::after: return "after";
    case Allen::met_by: return "met_by";
    case Allen::overlapped_by: return "overlapped_by";
    case Allen::started_by: return "started_by";
    case Allen::contains: return "contains";
    case Allen::finished_by: return "finished_by";
  }
  return "?";
}

std::string_view label(Lr r) {
  switch (r) {
    case Lr::left: return "left";
    case Lr::right: return "right";
    case Lr::front: return "front";
    case Lr::back: return "back";
    case Lr::on: return "on";
  }
  return "?";
}

std::string_view label(QdcDistance r) {
  switch (r) {
    case QdcDistance::adjacent: return "adjacent";
    case QdcDistance::near: return "near";
    case QdcDistance::far: return "far";
  }
  return "?";
}

std::string_view label(QdcSize r) {
  switch (r) {
    case QdcSize::smaller: return "smaller";
    case QdcSize::equi_sized: return "equi_sized";
    case QdcSize::larger: return "larger";
  }
  return "?";
}

std::optional<Rcc8> parse_rcc8(std::string_view s) {
  for (Rcc8 r : kAllRcc8)
    if (label(r) == s) return r;
  return std::nullopt;
}

std::optional<Allen> parse_allen(std::string_view s) {
  for (Allen r : kAllAllen)
    if (label(r) == s) return r;
  return std::nullopt;
}

Rcc8 converse(Rcc8 r) {
  switch (r) {
    case Rcc8::tpp: return Rcc8::tppi;
    case Rcc8::ntpp: return Rcc8::ntppi;
    case Rcc8::tppi: return Rcc8::tpp;
    case Rcc8::ntppi: return Rcc8::ntpp;
    default: return r;
  }
}

Allen converse(Allen r) {
  switch (r) {
    case Allen::before: return Allen::after;
    case Allen::meets: return Allen::met_by;
    case Allen::overlaps: return Allen::overlapped_by;
    case Allen::starts: return Allen::started_by;
    case Allen::during: return Allen::contains;
    case Allen::finishes: return Allen::finished_by;
    case Allen::equals: return Allen::equals;
    case Allen::after: return Allen::before;
    case Allen::met_by: return Allen::meets;
    case Allen::overlapped_by: return Allen::overlaps;
    case Allen::started_by: return Allen::starts;
    case Allen::contains: return Allen::during;
    case Allen::finished_by: return Allen::finishes;
  }
  return r;
}

// ---------------------------------------------------------------------------
// RCC-8

namespace {

struct Disk {
  Point2 c;
  double r;
};

Rcc8 polygon_rcc8(const Polygon2& a, const Polygon2& b, double eps) {
  if (distance(a, b) > eps) return Rcc8::dc;

  const bool a_in_b = boundary_within(a, b, eps);
  const bool b_in_a = boundary_within(b, a, eps);
  if (a_in_b && b_in_a) return Rcc8::eq;
  if (a_in_b || b_in_a) {
    const bool touching = boundary_distance(a, b) <= eps;
    if (a_in_b) return touching ? Rcc8::tpp : Rcc8::ntpp;
    return touching ? Rcc8::tppi : Rcc8::ntppi;
  }

  // Connected, neither contains the other: interiors overlap when the
  // intersection is thicker than the tolerance.
  const OverlapMeasure m = intersection_measure(a, b);
  const double thickness = m.perimeter > 0.0 ? 2.0 * m.area / m.perimeter : 0.0;
  return thickness > eps ? Rcc8::po : Rcc8::ec;
}

Rcc8 disk_rcc8(const Disk& a, const Disk& b, double eps) {
  const double d = norm(a.c - b.c);
  if (d - a.r - b.r > eps) return Rcc8::dc;
  if (d <= eps && std::abs(a.r - b.r) <= eps) return Rcc8::eq;
  if (d + a.r <= b.r + eps) return b.r - (d + a.r) <= eps ? Rcc8::tpp : Rcc8::ntpp;
  if (d + b.r <= a.r + eps) return a.r - (d + b.r) <= eps ? Rcc8::tppi : Rcc8::ntppi;
  if (d - a.r - b.r >= -eps) return Rcc8::ec;
  return Rcc8::po;
}

// Disk `a` against polygon `b`.
Rcc8 disk_polygon_rcc8(const Disk& a, const Polygon2& b, double eps) {
  const auto& ring = b.vertices();
  const double sd = signed_ring_distance(a.c, ring);
  if (sd - a.r > eps) return Rcc8::dc;

  if (sd <= -(a.r - eps)) {
    // Disk inside the polygon.
    return (-sd) - a.r <= eps ? Rcc8::tpp : Rcc8::ntpp;
  }
  double far = 0.0;
  for (const auto& v : ring) far = std::max(far, norm(v - a.c));
  if (far <= a.r + eps) return a.r - far <= eps ? Rcc8::tppi : Rcc8::ntppi;

  return sd < a.r - eps ? Rcc8::po : Rcc8::ec;
}

struct Region {
  enum class Type { polygon, disk } type;
  Polygon2 poly;
  Disk disk{};
};

std::optional<Region> as_region(const SpatialEntity& e) {
  if (const auto* p = std::get_if<Polygon2>(&e)) return Region{Region::Type::polygon, *p, {}};
  if (const auto* b = std::get_if<AABox>(&e); b && b->dim == 2)
    return Region{Region::Type::polygon, polygon_from_rect(*b), {}};
  if (const auto* s = std::get_if<Sphere>(&e); s && s->dim == 2)
    return Region{Region::Type::disk, {}, Disk{xy(s->center), s->radius}};
  return std::nullopt;
}

[[noreturn]] void unsupported(const SpatialEntity& a, const SpatialEntity& b) {
  throw Error(Errc::UnsupportedEntityKind, "rcc8 between " + std::string(kind_name(kind_of(a))) +
                                               " and " + std::string(kind_name(kind_of(b))));
}

Rcc8 region_rcc8(const Region& a, const Region& b, double eps) {
  using T = Region::Type;
  if (a.type == T::polygon && b.type == T::polygon) return polygon_rcc8(a.poly, b.poly, eps);
  if (a.type == T::disk && b.type == T::disk) return disk_rcc8(a.disk, b.disk, eps);
  if (a.type == T::disk) return disk_polygon_rcc8(a.disk, b.poly, eps);
  return converse(disk_polygon_rcc8(b.disk, a.poly, eps));
}

Rcc8 point_region_rcc8(Point2 p, const Region& r, double eps) {
  double sd = 0.0;
  if (r.type == Region::Type::disk) {
    sd = norm(p - r.disk.c) - r.disk.r;
  } else {
    sd = signed_ring_distance(p, r.poly.vertices());
  }
  if (sd > eps) return Rcc8::dc;
  if (sd >= -eps) return Rcc8::tpp;
  return Rcc8::ntpp;
}

}  // namespace

Rcc8 rcc8(const SpatialEntity& a, const SpatialEntity& b, double eps_rcc) {
  validate(a);
  validate(b);
  const auto ra = as_region(a);
  const auto rb = as_region(b);
  if (!ra || !rb) unsupported(a, b);
  return region_rcc8(*ra, *rb, eps_rcc);
}

Rcc8 rcc8_extended(const SpatialEntity& a, const SpatialEntity& b, double eps_rcc) {
  const SpatialEntity fa = is_planar(a) ? a : project_to_floor(a).entity;
  const SpatialEntity fb = is_planar(b) ? b : project_to_floor(b).entity;
  const auto ra = as_region(fa);
  const auto rb = as_region(fb);
  if (ra && rb) return region_rcc8(*ra, *rb, eps_rcc);

  const auto* pa = std::get_if<Point2>(&fa);
  const auto* pb = std::get_if<Point2>(&fb);
  if (pa && rb) return point_region_rcc8(*pa, *rb, eps_rcc);
  if (ra && pb) return converse(point_region_rcc8(*pb, *ra, eps_rcc));
  if (pa && pb) return norm(*pa - *pb) <= eps_rcc ? Rcc8::eq : Rcc8::dc;
  unsupported(a, b);
}

Rcc5 rcc5_coarsen(Rcc8 r) {
  switch (r) {
    case Rcc8::dc:
    case Rcc8::ec: return Rcc5::dr;
    case Rcc8::po: return Rcc5::po;
    case Rcc8::tpp:
    case Rcc8::ntpp: return Rcc5::pp;
    case Rcc8::tppi:
    case Rcc8::ntppi: return Rcc5::ppi;
    case Rcc8::eq: return Rcc5::eq;
  }
  return Rcc5::dr;
}

// ---------------------------------------------------------------------------

Allen allen(const TimeInterval& i, const TimeInterval& j, double eps) {
  auto eq = [eps](double x, double y) { return std::abs(x - y) <= eps; };
  auto lt = [eps](double x, double y) { return x < y - eps; };
  const double a1 = i.t1, a2 = i.t2, b1 = j.t1, b2 = j.t2;

  if (eq(a1, b1) && eq(a2, b2)) return Allen::equals;
  if (eq(a2, b1)) return Allen::meets;
  if (eq(b2, a1)) return Allen::met_by;
  if (lt(a2, b1)) return Allen::before;
  if (lt(b2, a1)) return Allen::after;
  if (eq(a1, b1)) return lt(a2, b2) ? Allen::starts : Allen::started_by;
  if (eq(a2, b2)) return lt(b1, a1) ? Allen::finishes : Allen::finished_by;
  if (lt(b1, a1) && lt(a2, b2)) return Allen::during;
  if (lt(a1, b1) && lt(b2, a2)) return Allen::contains;
  return lt(a1, b1) ? Allen::overlaps : Allen::overlapped_by;
}

RectAlgRelation rect_algebra(const AABox& a, const AABox& b, double eps) {
  validate(a);
  validate(b);
  if (a.dim != b.dim)
    throw Error(Errc::DimensionMismatch, "rect_algebra needs boxes of equal dimension");
  RectAlgRelation rel;
  for (int k = 0; k < a.dim; ++k)
    rel.axes.push_back(allen(TimeInterval(a.lo(k), a.hi(k)), TimeInterval(b.lo(k), b.hi(k)), eps));
  return rel;
}

Lr lr(Point2 p, Point2 l1, Point2 l2, double eps) {
  const Vec2 d = l2 - l1;
  const double len = norm(d);
  if (len < kGeomEps) throw Error(Errc::DegenerateLine, "line endpoints coincide");
  const double offset = cross(d, p - l1) / len;
  if (offset > eps) return Lr::left;
  if (offset < -eps) return Lr::right;
  const double s = dot(p - l1, d) / (len * len);
  if (s < 0.0) return Lr::back;
  if (s > 1.0) return Lr::front;
  return Lr::on;
}

std::vector<std::string> CoarseOrient::labels() const {
  std::vector<std::string> out;
  if (facing_towards) out.emplace_back("facing_towards");
  if (facing_away) out.emplace_back("facing_away");
  if (same_direction) out.emplace_back("same_direction");
  if (opposite_direction) out.emplace_back("opposite_direction");
  return out;
}

CoarseOrient orient_pair(const OrientedPoint& a, const OrientedPoint& b, double theta_same,
                         double theta_face) {
  validate(a);
  validate(b);
  const Vec3 bearing = b.p - a.p;
  if (norm(bearing) < kGeomEps)
    throw Error(Errc::CoincidentPositions, "bearing between coincident points is undefined");

  CoarseOrient rel;
  const double between = angle_between(a.v, b.v);
  rel.same_direction = between < theta_same;
  rel.opposite_direction = between > std::numbers::pi - theta_same;
  rel.facing_towards = angle_between(a.v, bearing) < theta_face && angle_between(b.v, -bearing) < theta_face;
  rel.facing_away = angle_between(a.v, -bearing) < theta_face && angle_between(b.v, bearing) < theta_face;
  return rel;
}

QdcDistance qdc_distance(double d, const QdcConfig& cfg) {
  if (d <= cfg.d_adj) return QdcDistance::adjacent;
  if (d <= cfg.d_near) return QdcDistance::near;
  return QdcDistance::far;
}

QdcSize qdc_size(double sa, double sb, const QdcConfig& cfg) {
  if (sa == sb) return QdcSize::equi_sized;
  if (sb == 0.0) return QdcSize::larger;
  const double ratio = sa / sb;
  if (ratio < 1.0 / cfg.rho) return QdcSize::smaller;
  if (ratio > cfg.rho) return QdcSize::larger;
  return QdcSize::equi_sized;
}

QdcRelation qdc(const SpatialEntity& a, const SpatialEntity& b, const QdcConfig& cfg) {
  return {qdc_distance(distance(a, b), cfg), qdc_size(size(a), size(b), cfg)};
}

}  // namespace scenesem
