#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenesem/geometry.hpp"

namespace scenesem {

// Qualitative relation families over concrete configurations. Labels
// serialize as the lowercase enumerator names.

enum class Rcc8 { dc, ec, po, tpp, ntpp, tppi, ntppi, eq };
enum class Rcc5 { dr, po, pp, ppi, eq };
enum class Allen {
  before,
  meets,
  overlaps,
  starts,
  during,
  finishes,
  equals,
  after,
  met_by,
  overlapped_by,
  started_by,
  contains,
  finished_by,
};
enum class Lr { left, right, front, back, on };
enum class QdcDistance { adjacent, near, far };
enum class QdcSize { smaller, equi_sized, larger };

inline constexpr std::array kAllRcc8 = {Rcc8::dc,   Rcc8::ec,   Rcc8::po,    Rcc8::tpp,
                                        Rcc8::ntpp, Rcc8::tppi, Rcc8::ntppi, Rcc8::eq};
inline constexpr std::array kAllAllen = {
    Allen::before, Allen::meets,  Allen::overlaps, Allen::starts,        Allen::during,
    Allen::finishes, Allen::equals, Allen::after,  Allen::met_by,        Allen::overlapped_by,
    Allen::started_by, Allen::contains, Allen::finished_by};

std::string_view label(Rcc8 r);
std::string_view label(Rcc5 r);
std::string_view label(Allen r);
std::string_view label(Lr r);
std::string_view label(QdcDistance r);
std::string_view label(QdcSize r);

std::optional<Rcc8> parse_rcc8(std::string_view s);
std::optional<Allen> parse_allen(std::string_view s);

Rcc8 converse(Rcc8 r);
Allen converse(Allen r);

struct QdcConfig {
  double d_adj = 0.15;  // m
  double d_near = 1.5;  // m
  double rho = 1.25;    // size ratio band
};

struct CalculiConfig {
  double eps_rcc = 1e-6;                        // m, boundary tolerance
  double eps_t = 1e-6;                          // s, endpoint equality
  double theta_same = std::numbers::pi / 4.0;   // rad
  double theta_face = std::numbers::pi / 4.0;   // rad
  QdcConfig qdc;
};

/// RCC-8 between two planar regions (polygons, rectangles, circles) under
/// closed-set semantics. Throws UnsupportedEntityKind for anything else.
Rcc8 rcc8(const SpatialEntity& a, const SpatialEntity& b, double eps_rcc = 1e-6);

/// rcc8 extended to point-like operands: a point is dc, tpp or ntpp of a
/// region depending on whether it lies outside, on the boundary or inside;
/// two points are eq or dc. Spatial operands are projected to the floor first
/// and degenerate projections are treated as points.
Rcc8 rcc8_extended(const SpatialEntity& a, const SpatialEntity& b, double eps_rcc = 1e-6);

Rcc5 rcc5_coarsen(Rcc8 r);

Allen allen(const TimeInterval& i, const TimeInterval& j, double eps_t = 1e-6);

/// Per-axis Allen relations of the box projections; size() == box dimension.
struct RectAlgRelation {
  std::vector<Allen> axes;
  friend bool operator==(const RectAlgRelation&, const RectAlgRelation&) = default;
};
RectAlgRelation rect_algebra(const AABox& a, const AABox& b, double eps = 1e-6);

/// Point against the directed line through l1 -> l2. Collinear points are
/// refined by the projection parameter into back / on / front.
Lr lr(Point2 p, Point2 l1, Point2 l2, double eps = kGeomEps);

struct CoarseOrient {
  bool facing_towards = false;
  bool facing_away = false;
  bool same_direction = false;
  bool opposite_direction = false;

  std::vector<std::string> labels() const;
  friend bool operator==(const CoarseOrient&, const CoarseOrient&) = default;
};
CoarseOrient orient_pair(const OrientedPoint& a, const OrientedPoint& b,
                         double theta_same = std::numbers::pi / 4.0,
                         double theta_face = std::numbers::pi / 4.0);

struct QdcRelation {
  QdcDistance distance;
  QdcSize size;
  friend bool operator==(const QdcRelation&, const QdcRelation&) = default;
};
QdcRelation qdc(const SpatialEntity& a, const SpatialEntity& b, const QdcConfig& cfg = {});
QdcDistance qdc_distance(double d, const QdcConfig& cfg);
QdcSize qdc_size(double size_a, double size_b, const QdcConfig& cfg);

}  // namespace scenesem
