#include "scenesem/overlay.hpp"

#include <algorithm>
#include <limits>

namespace scenesem {

namespace {

// Parameter along p->q of the intersection with c->d, when the two segments
// cross at a single point.
bool crossing_param(Point2 p, Point2 q, Point2 c, Point2 d, double& s) {
  const Vec2 r = q - p;
  const Vec2 t = d - c;
  const double denom = cross(r, t);
  if (denom == 0.0) return false;
  const double u = cross(c - p, t) / denom;
  const double v = cross(c - p, r) / denom;
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return false;
  s = u;
  return true;
}

std::size_t nearest_edge(Point2 p, const std::vector<Point2>& ring) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const double d = point_segment_distance(p, ring[i], ring[(i + 1) % ring.size()]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::vector<Edge2> split_boundary(const Polygon2& ring, const Polygon2& other, double eps) {
  const auto& a = ring.vertices();
  const auto& b = other.vertices();
  std::vector<Edge2> pieces;
  pieces.reserve(a.size() * 2);
  std::vector<double> cuts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point2 p = a[i];
    const Point2 q = a[(i + 1) % a.size()];
    const Vec2 pq = q - p;
    const double len2 = dot(pq, pq);
    cuts.assign({0.0, 1.0});
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Point2 c = b[j];
      const Point2 d = b[(j + 1) % b.size()];
      double s = 0.0;
      if (crossing_param(p, q, c, d, s)) cuts.push_back(s);
      if (point_segment_distance(c, p, q) <= eps) cuts.push_back(dot(c - p, pq) / len2);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double s0 = std::clamp(cuts[k], 0.0, 1.0);
      const double s1 = std::clamp(cuts[k + 1], 0.0, 1.0);
      if ((s1 - s0) * std::sqrt(len2) <= eps) continue;
      pieces.emplace_back(p + s0 * pq, p + s1 * pq);
    }
  }
  return pieces;
}

OverlapMeasure intersection_measure(const Polygon2& a, const Polygon2& b, double eps) {
  OverlapMeasure m;
  auto accumulate = [&](const Polygon2& self, const Polygon2& other, bool keep_shared) {
    const auto& ring = other.vertices();
    for (const auto& [p, q] : split_boundary(self, other, eps)) {
      const Point2 mid = 0.5 * (p + q);
      const double sd = signed_ring_distance(mid, ring);
      bool inside = sd < -eps;
      if (!inside && keep_shared && sd <= eps) {
        const std::size_t e = nearest_edge(mid, ring);
        const Vec2 dir = ring[(e + 1) % ring.size()] - ring[e];
        inside = dot(dir, q - p) > 0.0;
      }
      if (!inside) continue;
      m.area += 0.5 * cross(p, q);
      m.perimeter += norm(q - p);
    }
  };
  accumulate(a, b, true);
  accumulate(b, a, false);
  m.area = std::max(0.0, m.area);
  return m;
}

bool boundary_within(const Polygon2& inner, const Polygon2& outer, double tol) {
  const auto& ring = outer.vertices();
  for (const auto& v : inner.vertices())
    if (signed_ring_distance(v, ring) > tol) return false;
  for (const auto& [p, q] : split_boundary(inner, outer, tol))
    if (signed_ring_distance(0.5 * (p + q), ring) > tol) return false;
  return true;
}

double boundary_distance(const Polygon2& a, const Polygon2& b) {
  const auto& ra = a.vertices();
  const auto& rb = b.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ra.size(); ++i)
    for (std::size_t j = 0; j < rb.size(); ++j)
      best = std::min(best, segment_segment_distance(ra[i], ra[(i + 1) % ra.size()], rb[j],
                                                     rb[(j + 1) % rb.size()]));
  return best;
}

}  // namespace scenesem
