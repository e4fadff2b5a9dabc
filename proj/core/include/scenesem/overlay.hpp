#pragma once

#include <utility>
#include <vector>

#include "scenesem/geometry.hpp"

namespace scenesem {

// Boundary-walking primitives for simple polygons: enough to classify
// topological relations and measure overlaps without a full boolean-ops
// kernel.

using Edge2 = std::pair<Point2, Point2>;

/// Splits every edge of `ring` at the points where it meets the boundary of
/// `other` (crossings and touching vertices), preserving edge direction.
std::vector<Edge2> split_boundary(const Polygon2& ring, const Polygon2& other, double eps = kGeomEps);

/// Area and perimeter of the intersection of two simple polygons, obtained by
/// integrating x dy along the parts of each boundary that lie inside the
/// other polygon. Coincident edges are counted once when both polygons lie on
/// the same side of them.
struct OverlapMeasure {
  double area = 0.0;
  double perimeter = 0.0;
};
OverlapMeasure intersection_measure(const Polygon2& a, const Polygon2& b, double eps = kGeomEps);

/// True when the whole boundary of `inner` lies within `tol` of the closed
/// region `outer`. For simple polygons this is equivalent to containment.
bool boundary_within(const Polygon2& inner, const Polygon2& outer, double tol);

/// Minimum distance between the two boundaries (0 when they touch or cross).
double boundary_distance(const Polygon2& a, const Polygon2& b);

}  // namespace scenesem
