#include "scenesem/floorplan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>

#include "scenesem/dbscan.hpp"
#include "scenesem/error.hpp"
#include "scenesem/overlay.hpp"

namespace scenesem {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
// Rectangles whose intersection is thicker than this overlap.
constexpr double kOverlapThickness = 0.05;
// Sides sharing a line must overlap by this much to make structures adjacent.
constexpr double kAdjacencyOverlap = 0.05;

double canonical_angle(Vec2 d) {
  double a = std::atan2(d.y, d.x);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }

std::optional<Point2> intersect(const WallLine& l, const WallLine& m) {
  const double den = cross(l.dir, m.dir);
  if (std::abs(den) < 1e-9) return std::nullopt;
  const double t = cross(m.point - l.point, m.dir) / den;
  return l.point + t * l.dir;
}

// Union length of [lo, hi] intervals clipped to [0, len].
double covered_length(std::vector<std::pair<double, double>> iv, double len) {
  for (auto& [a, b] : iv) {
    if (a > b) std::swap(a, b);
    a = std::clamp(a, 0.0, len);
    b = std::clamp(b, 0.0, len);
  }
  std::sort(iv.begin(), iv.end());
  double total = 0.0, cur_a = 0.0, cur_b = -1.0;
  for (auto [a, b] : iv) {
    if (a > cur_b) {
      if (cur_b > cur_a) total += cur_b - cur_a;
      cur_a = a;
      cur_b = b;
    } else {
      cur_b = std::max(cur_b, b);
    }
  }
  if (cur_b > cur_a) total += cur_b - cur_a;
  return total;
}

struct Candidate {
  FloorPlanStructure s;
  Polygon2 poly;
  double area;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace

void validate(const FloorplanConfig& c) {
  auto pos = [](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(Errc::ConfigError, std::string("floorplan.") + name + " must be positive");
  };
  if (c.k_neighbors < 3) throw Error(Errc::ConfigError, "floorplan.k_neighbors must be at least 3");
  if (c.min_pts < 1) throw Error(Errc::ConfigError, "floorplan.min_pts must be at least 1");
  pos("angle_tol_deg", c.angle_tol_deg);
  pos("dist_tol", c.dist_tol);
  pos("min_inliers", c.min_inliers);
  pos("vertical_tol_deg", c.vertical_tol_deg);
  pos("min_height", c.min_height);
  pos("ceiling_gap", c.ceiling_gap);
  pos("eps_angle_deg", c.eps_angle_deg);
  pos("eps_offset", c.eps_offset);
  pos("min_dim", c.min_dim);
  pos("corridor_aspect", c.corridor_aspect);
  pos("perpendicular_tol_deg", c.perpendicular_tol_deg);
  if (!(c.min_coverage >= 0.0 && c.min_coverage <= 1.0))
    throw Error(Errc::ConfigError, "floorplan.min_coverage must lie in [0, 1]");
  if (c.angle_tol_deg >= 90.0 || c.vertical_tol_deg >= 90.0 || c.eps_angle_deg >= 90.0 ||
      c.perpendicular_tol_deg >= 45.0)
    throw Error(Errc::ConfigError, "floorplan angle tolerances are out of range");
  if (c.ceiling_z && !std::isfinite(*c.ceiling_z))
    throw Error(Errc::ConfigError, "floorplan.ceiling_z must be finite");
}

std::vector<PlanarRegion> detect_planes(const NormalEstimate& est, const FloorplanConfig& cfg) {
  const PointCloud& cloud = est.cloud;
  const std::size_t n = cloud.size();
  const double cos_tol = std::cos(cfg.angle_tol_deg * kDeg);

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return est.curvature[a] < est.curvature[b]; });

  std::vector<char> assigned(n, 0);
  std::vector<PlanarRegion> out;
  std::deque<std::uint32_t> queue;
  for (std::uint32_t seed : order) {
    if (assigned[seed]) continue;
    std::vector<std::uint32_t> members{seed};
    assigned[seed] = 1;
    Vec3 nr = cloud.normals[seed];
    Point3 p0 = cloud.points[seed];
    std::size_t next_refit = 16;
    queue.assign(1, seed);
    while (!queue.empty()) {
      const std::uint32_t i = queue.front();
      queue.pop_front();
      for (std::uint32_t j : est.neighbors[i]) {
        if (assigned[j]) continue;
        if (std::abs(dot(cloud.normals[j], nr)) < cos_tol) continue;
        if (std::abs(dot(cloud.points[j] - p0, nr)) >= cfg.dist_tol) continue;
        assigned[j] = 1;
        members.push_back(j);
        queue.push_back(j);
      }
      if (members.size() >= next_refit) {
        PlaneFit f = fit_plane(cloud, members);
        nr = f.normal;
        p0 = f.centroid;
        next_refit *= 2;
      }
    }
    // Pick up boundary points whose normals are spoiled by a neighbouring plane.
    const std::size_t grown = members.size();
    for (std::size_t m = 0; m < grown; ++m) {
      for (std::uint32_t j : est.neighbors[members[m]]) {
        if (assigned[j] || std::abs(dot(cloud.points[j] - p0, nr)) >= cfg.dist_tol) continue;
        assigned[j] = 1;
        members.push_back(j);
      }
    }
    double w = 0.0;
    for (auto i : members) w += cloud.weight(i);
    if (w < cfg.min_inliers) continue;
    PlaneFit f = fit_plane(cloud, members);
    Vec3 normal = f.normal;
    // Same sign convention as the point normals: away from the cloud centre.
    double agree = 0.0;
    for (auto i : members) agree += dot(cloud.normals[i], normal);
    if (agree < 0.0) normal = -normal;
    std::sort(members.begin(), members.end());
    out.push_back({normal, f.centroid, w, f.rms, std::move(members)});
  }
  return out;
}

std::vector<WallSegment> wall_candidates(const PointCloud& cloud, const std::vector<PlanarRegion>& planes,
                                         const FloorplanConfig& cfg) {
  const double sin_v = std::sin(cfg.vertical_tol_deg * kDeg);
  const double cos_v = std::cos(cfg.vertical_tol_deg * kDeg);

  double zmin_all = std::numeric_limits<double>::infinity();
  double zmax_all = -std::numeric_limits<double>::infinity();
  for (const auto& p : cloud.points) {
    zmin_all = std::min(zmin_all, p.z);
    zmax_all = std::max(zmax_all, p.z);
  }
  double ceiling = zmax_all;
  if (cfg.ceiling_z) {
    ceiling = *cfg.ceiling_z;
  } else {
    std::optional<double> top;
    for (const auto& pl : planes)
      if (std::abs(pl.normal.z) > cos_v && (!top || pl.centroid.z > *top)) top = pl.centroid.z;
    if (top && *top >= zmin_all + cfg.min_height) ceiling = *top;
  }

  std::vector<WallSegment> out;
  for (const auto& pl : planes) {
    if (std::abs(pl.normal.z) >= sin_v) continue;
    const Vec2 nh = normalized(Vec2{pl.normal.x, pl.normal.y});
    const Vec2 u{-nh.y, nh.x};
    const Point2 c = xy(pl.centroid);
    double s0 = std::numeric_limits<double>::infinity(), s1 = -s0, z0 = s0, z1 = -s0;
    for (auto i : pl.inliers) {
      const Point3& p = cloud.points[i];
      const double s = dot(xy(p) - c, u);
      s0 = std::min(s0, s);
      s1 = std::max(s1, s);
      z0 = std::min(z0, p.z);
      z1 = std::max(z1, p.z);
    }
    const double height = z1 - z0;
    if (!(height >= cfg.min_height || z1 >= ceiling - cfg.ceiling_gap)) continue;
    if (!(s1 - s0 > 0.0) || !(height > 0.0)) continue;
    out.push_back({pl.centroid, {nh.x, nh.y, 0.0}, height, s1 - s0, z0, z1, pl.weight, c + s0 * u,
                   c + s1 * u});
  }
  return out;
}

double wall_angle(const WallSegment& w) { return canonical_angle(w.b - w.a); }

std::vector<std::vector<std::size_t>> cluster_walls(const std::vector<WallSegment>& walls,
                                                    const FloorplanConfig& cfg) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = walls.size();
  if (n == 0) return out;
  std::vector<double> ang(n);
  for (std::size_t i = 0; i < n; ++i) ang[i] = wall_angle(walls[i]);

  auto singletons = [](std::vector<int>& labels) {
    int next = 1 + *std::max_element(labels.begin(), labels.end());
    for (int& l : labels)
      if (l == kDbscanNoise) l = next++;
    return next;
  };

  std::vector<int> l1 = dbscan(n, cfg.eps_angle_deg * kDeg, cfg.min_pts, [&](std::size_t i, std::size_t j) {
    return angular_distance_mod_pi(ang[i], ang[j]);
  });
  const int n1 = singletons(l1);
  for (int c = 0; c < n1; ++c) {
    std::vector<std::size_t> members;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (l1[i] != c) continue;
      members.push_back(i);
      sx += walls[i].weight * std::cos(2.0 * ang[i]);
      sy += walls[i].weight * std::sin(2.0 * ang[i]);
    }
    if (members.empty()) continue;
    const double mean = 0.5 * std::atan2(sy, sx);
    const Vec2 normal{-std::sin(mean), std::cos(mean)};
    std::vector<double> off;
    for (auto i : members) off.push_back(dot(0.5 * (walls[i].a + walls[i].b), normal));
    std::vector<int> l2 = dbscan(members.size(), cfg.eps_offset, cfg.min_pts,
                                 [&](std::size_t i, std::size_t j) { return std::abs(off[i] - off[j]); });
    const int n2 = singletons(l2);
    for (int d = 0; d < n2; ++d) {
      std::vector<std::size_t> cl;
      for (std::size_t k = 0; k < members.size(); ++k)
        if (l2[k] == d) cl.push_back(members[k]);
      if (!cl.empty()) out.push_back(std::move(cl));
    }
  }
  return out;
}

double WallLine::angle() const { return canonical_angle(dir); }

std::vector<WallLine> fit_lines(const std::vector<WallSegment>& walls,
                                const std::vector<std::vector<std::size_t>>& clusters) {
  std::vector<WallLine> out;
  for (const auto& cl : clusters) {
    if (cl.empty()) continue;
    double W = 0.0;
    Point2 mean{};
    for (auto i : cl) {
      mean = mean + walls[i].weight * (walls[i].a + walls[i].b);
      W += 2.0 * walls[i].weight;
    }
    mean = mean * (1.0 / W);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (auto i : cl) {
      for (Point2 p : {walls[i].a, walls[i].b}) {
        const Vec2 d = p - mean;
        sxx += walls[i].weight * d.x * d.x;
        syy += walls[i].weight * d.y * d.y;
        sxy += walls[i].weight * d.x * d.y;
      }
    }
    Vec2 dir;
    if (std::abs(sxy) < 1e-15 && std::abs(sxx - syy) < 1e-15) {
      dir = normalized(walls[cl.front()].b - walls[cl.front()].a);
    } else {
      dir = unit_at(0.5 * std::atan2(2.0 * sxy, sxx - syy));
    }
    dir = unit_at(canonical_angle(dir));
    const Vec2 nrm{-dir.y, dir.x};
    double res = 0.0, s0 = std::numeric_limits<double>::infinity(), s1 = -s0;
    for (auto i : cl) {
      for (Point2 p : {walls[i].a, walls[i].b}) {
        const double r = dot(p - mean, nrm);
        res += walls[i].weight * r * r;
        s0 = std::min(s0, dot(p - mean, dir));
        s1 = std::max(s1, dot(p - mean, dir));
      }
    }
    out.push_back({mean, dir, cl, std::sqrt(res / W), s0, s1});
  }
  return out;
}

std::string_view label(StructureType t) { return t == StructureType::room ? "room" : "corridor"; }

Polygon2 FloorPlanStructure::polygon() const { return validate_polygon(corners); }

Point2 FloorPlanStructure::center() const {
  return 0.25 * (corners[0] + corners[1] + corners[2] + corners[3]);
}

double FloorPlanStructure::length() const {
  return std::max(norm(corners[1] - corners[0]), norm(corners[2] - corners[1]));
}

double FloorPlanStructure::width() const {
  return std::min(norm(corners[1] - corners[0]), norm(corners[2] - corners[1]));
}

const FloorPlanStructure* FloorPlan::find(std::string_view id) const {
  for (const auto& s : structures)
    if (s.id == id) return &s;
  return nullptr;
}

FloorPlan extract_rooms(const std::vector<WallLine>& lines, const std::vector<WallSegment>& walls,
                        const FloorplanConfig& cfg) {
  const double par_tol = cfg.eps_angle_deg * kDeg;
  const double perp_tol = cfg.perpendicular_tol_deg * kDeg;
  const std::size_t n = lines.size();

  auto parallel = [&](std::size_t i, std::size_t j) {
    return angular_distance_mod_pi(lines[i].angle(), lines[j].angle()) <= par_tol;
  };
  auto perpendicular = [&](std::size_t i, std::size_t j) {
    return std::abs(angular_distance_mod_pi(lines[i].angle(), lines[j].angle()) - std::numbers::pi / 2) <=
           perp_tol;
  };
  auto separation = [&](std::size_t i, std::size_t j) {
    const Vec2 nrm{-lines[i].dir.y, lines[i].dir.x};
    return std::abs(dot(lines[j].point - lines[i].point, nrm));
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (parallel(i, j) && separation(i, j) >= cfg.min_dim) pairs.emplace_back(i, j);

  std::vector<Candidate> cands;
  for (const auto& [l1, l2] : pairs) {
    for (const auto& [m1, m2] : pairs) {
      if (m1 <= l1 || !perpendicular(l1, m1)) continue;
      const std::array<std::size_t, 4> side_line{l1, m2, l2, m1};
      std::array<Point2, 4> c;
      bool ok = true;
      const std::array<std::pair<std::size_t, std::size_t>, 4> at{
          std::pair{l1, m1}, std::pair{l1, m2}, std::pair{l2, m2}, std::pair{l2, m1}};
      for (int k = 0; k < 4 && ok; ++k) {
        auto p = intersect(lines[at[k].first], lines[at[k].second]);
        ok = p.has_value();
        if (ok) c[k] = *p;
      }
      if (!ok) continue;
      FloorPlanStructure s;
      std::array<int, 4> sl;
      for (int k = 0; k < 4; ++k) sl[k] = static_cast<int>(side_line[k]);
      // Counter-clockwise order; side k runs c[k] -> c[k+1].
      if (signed_area(c) < 0.0) {
        std::swap(c[1], c[3]);
        sl = {sl[3], sl[2], sl[1], sl[0]};
      }
      // Start at the lexicographically smallest corner.
      int first = 0;
      for (int k = 1; k < 4; ++k)
        if (c[k].x < c[first].x || (c[k].x == c[first].x && c[k].y < c[first].y)) first = k;
      for (int k = 0; k < 4; ++k) {
        s.corners[k] = c[(first + k) % 4];
        s.side_lines[k] = sl[(first + k) % 4];
      }
      const double d0 = norm(s.corners[1] - s.corners[0]);
      const double d1 = norm(s.corners[2] - s.corners[1]);
      if (std::min(d0, d1) < cfg.min_dim) continue;

      double covered = 0.0, perimeter = 0.0;
      for (int k = 0; k < 4; ++k) {
        const Point2 a = s.corners[k], b = s.corners[(k + 1) % 4];
        const double len = norm(b - a);
        const Vec2 u = (b - a) * (1.0 / len);
        std::vector<std::pair<double, double>> iv;
        for (auto w : lines[s.side_lines[k]].members) iv.emplace_back(dot(walls[w].a - a, u), dot(walls[w].b - a, u));
        const double cov = covered_length(std::move(iv), len);
        s.side_coverage[k] = cov / len;
        covered += cov;
        perimeter += len;
      }
      s.coverage = covered / perimeter;
      if (s.coverage < cfg.min_coverage) continue;
      const Vec2 major = d0 >= d1 ? s.corners[1] - s.corners[0] : s.corners[2] - s.corners[1];
      s.major_axis = unit_at(canonical_angle(major));
      s.type = std::max(d0, d1) / std::min(d0, d1) >= cfg.corridor_aspect ? StructureType::corridor
                                                                          : StructureType::room;
      try {
        Polygon2 poly = validate_polygon(s.corners);
        const double area = poly.area();
        cands.push_back({std::move(s), std::move(poly), area});
      } catch (const Error&) {
      }
    }
  }

  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.s.coverage != b.s.coverage) return a.s.coverage > b.s.coverage;
    if (a.area != b.area) return a.area > b.area;
    return std::lexicographical_compare(a.s.corners.begin(), a.s.corners.end(), b.s.corners.begin(),
                                        b.s.corners.end(), [](Point2 p, Point2 q) {
                                          return p.x != q.x ? p.x < q.x : p.y < q.y;
                                        });
  });

  std::vector<Candidate> kept;
  for (auto& c : cands) {
    bool clash = false;
    for (const auto& k : kept) {
      OverlapMeasure m = intersection_measure(c.poly, k.poly);
      if (m.perimeter > 0.0 && 2.0 * m.area / m.perimeter > kOverlapThickness) {
        clash = true;
        break;
      }
    }
    if (!clash) kept.push_back(std::move(c));
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
    Point2 ca = a.s.center(), cb = b.s.center();
    return ca.x != cb.x ? ca.x < cb.x : ca.y < cb.y;
  });

  FloorPlan plan;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    kept[i].s.id = std::string(label(kept[i].s.type)) + std::to_string(i + 1);
    plan.structures.push_back(kept[i].s);
  }
  for (std::size_t i = 0; i < plan.structures.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.structures.size(); ++j) {
      const auto& A = plan.structures[i];
      const auto& B = plan.structures[j];
      bool adj = false;
      for (int p = 0; p < 4 && !adj; ++p) {
        for (int q = 0; q < 4 && !adj; ++q) {
          if (A.side_lines[p] < 0 || A.side_lines[p] != B.side_lines[q]) continue;
          const WallLine& L = lines[A.side_lines[p]];
          auto proj = [&](Point2 x) { return dot(x - L.point, L.dir); };
          double a0 = proj(A.corners[p]), a1 = proj(A.corners[(p + 1) % 4]);
          double b0 = proj(B.corners[q]), b1 = proj(B.corners[(q + 1) % 4]);
          if (a0 > a1) std::swap(a0, a1);
          if (b0 > b1) std::swap(b0, b1);
          adj = std::min(a1, b1) - std::max(a0, b0) > kAdjacencyOverlap;
        }
      }
      if (adj) {
        auto pr = std::minmax(A.id, B.id);
        plan.adjacency.emplace_back(pr.first, pr.second);
      }
    }
  }
  std::sort(plan.adjacency.begin(), plan.adjacency.end());
  if (plan.structures.empty()) plan.warnings.push_back("NoRoomsFound: no rectangle met the coverage and size limits");
  return plan;
}

std::optional<std::string> locate(Point2 p, const FloorPlan& plan) {
  const FloorPlanStructure* best = nullptr;
  double best_d = 0.0;
  for (const auto& s : plan.structures) {
    if (locate_in_ring(p, s.corners) == PointLocation::outside) continue;
    const double d = norm(p - s.center());
    if (!best || d < best_d || (d == best_d && s.id < best->id)) {
      best = &s;
      best_d = d;
    }
  }
  if (!best) return std::nullopt;
  return best->id;
}

FloorplanResult extract_floorplan(const PointCloud& cloud, const FloorplanConfig& cfg) {
  validate(cfg);
  FloorplanResult r;
  r.input_points = cloud.size();
  PointCloud work = cfg.downsample ? voxel_downsample(cloud, 2.0 * cfg.dist_tol) : cloud;
  r.samples = work.size();
  if (work.size() <= cfg.k_neighbors) {
    r.plan.warnings.push_back("NoRoomsFound: cloud has too few points for normal estimation");
    return r;
  }
  NormalEstimate est = estimate_normals(work, cfg.k_neighbors);
  const auto planes = detect_planes(est, cfg);
  r.planes = planes.size();
  r.walls = wall_candidates(est.cloud, planes, cfg);
  r.lines = fit_lines(r.walls, cluster_walls(r.walls, cfg));
  r.plan = extract_rooms(r.lines, r.walls, cfg);
  return r;
}

nlohmann::ordered_json to_json(const FloorPlan& plan) {
  nlohmann::ordered_json j;
  j["structures"] = nlohmann::ordered_json::array();
  for (const auto& s : plan.structures) {
    nlohmann::ordered_json o;
    o["id"] = s.id;
    o["type"] = label(s.type);
    o["corners"] = nlohmann::ordered_json::array();
    for (const auto& c : s.corners) o["corners"].push_back({c.x, c.y});
    o["coverage"] = s.coverage;
    o["side_coverage"] = s.side_coverage;
    o["major_axis"] = {s.major_axis.x, s.major_axis.y};
    j["structures"].push_back(std::move(o));
  }
  j["adjacency"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : plan.adjacency) j["adjacency"].push_back({a, b});
  j["warnings"] = plan.warnings;
  return j;
}

FloorPlan floorplan_from_json(const nlohmann::json& j) {
  try {
    FloorPlan plan;
    for (const auto& o : j.at("structures")) {
      FloorPlanStructure s;
      s.id = o.at("id").get<std::string>();
      const std::string type = o.at("type").get<std::string>();
      if (type != "room" && type != "corridor") throw Error(Errc::ParseError, "unknown structure type '" + type + "'");
      s.type = type == "room" ? StructureType::room : StructureType::corridor;
      const auto& cs = o.at("corners");
      if (cs.size() != 4) throw Error(Errc::ParseError, "structure " + s.id + " needs 4 corners");
      for (int k = 0; k < 4; ++k) s.corners[k] = {cs[k].at(0).get<double>(), cs[k].at(1).get<double>()};
      if (signed_area(s.corners) < 0.0) std::reverse(s.corners.begin(), s.corners.end());
      (void)validate_polygon(s.corners);
      s.coverage = o.value("coverage", 1.0);
      if (o.contains("side_coverage"))
        for (int k = 0; k < 4; ++k) s.side_coverage[k] = o["side_coverage"].at(k).get<double>();
      if (o.contains("major_axis")) {
        s.major_axis = normalized(Vec2{o["major_axis"].at(0).get<double>(), o["major_axis"].at(1).get<double>()});
      } else {
        const Vec2 e0 = s.corners[1] - s.corners[0], e1 = s.corners[2] - s.corners[1];
        s.major_axis = unit_at(canonical_angle(norm(e0) >= norm(e1) ? e0 : e1));
      }
      if (plan.find(s.id)) throw Error(Errc::ParseError, "duplicate structure id " + s.id);
      plan.structures.push_back(std::move(s));
    }
    if (j.contains("adjacency"))
      for (const auto& a : j.at("adjacency"))
        plan.adjacency.emplace_back(a.at(0).get<std::string>(), a.at(1).get<std::string>());
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed floor plan: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    throw Error(Errc::ParseError, std::string("invalid floor plan: ") + e.what());
  }
}

std::string debug_svg(const FloorplanResult& r) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  auto grow = [&](Point2 p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  };
  for (const auto& w : r.walls) {
    grow(w.a);
    grow(w.b);
  }
  for (const auto& s : r.plan.structures)
    for (const auto& c : s.corners) grow(c);
  if (!(x1 >= x0)) x0 = y0 = 0.0, x1 = y1 = 1.0;
  const double pad = 0.5, scale = 50.0;
  const double W = (x1 - x0 + 2 * pad) * scale, H = (y1 - y0 + 2 * pad) * scale;
  auto X = [&](double x) { return fmt("%.2f", (x - x0 + pad) * scale); };
  auto Y = [&](double y) { return fmt("%.2f", (y1 - y + pad) * scale); };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", W) + "\" height=\"" +
                  fmt("%.0f", H) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& st : r.plan.structures) {
    s += "<polygon fill=\"" + std::string(st.type == StructureType::room ? "#cfe8ff" : "#ffe3b3") +
         "\" stroke=\"#555\" points=\"";
    for (const auto& c : st.corners) s += X(c.x) + "," + Y(c.y) + " ";
    s += "\"/>\n";
    const Point2 c = st.center();
    s += "<text x=\"" + X(c.x) + "\" y=\"" + Y(c.y) + "\" font-size=\"14\" text-anchor=\"middle\">" + st.id +
         "</text>\n";
  }
  for (const auto& l : r.lines) {
    const Point2 a = l.point + (l.s_min - 0.5) * l.dir, b = l.point + (l.s_max + 0.5) * l.dir;
    s += "<line x1=\"" + X(a.x) + "\" y1=\"" + Y(a.y) + "\" x2=\"" + X(b.x) + "\" y2=\"" + Y(b.y) +
         "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (const auto& w : r.walls)
    s += "<line x1=\"" + X(w.a.x) + "\" y1=\"" + Y(w.a.y) + "\" x2=\"" + X(w.b.x) + "\" y2=\"" + Y(w.b.y) +
         "\" stroke=\"black\" stroke-width=\"3\"/>\n";
  s += "</svg>\n";
  return s;
}

std::vector<SceneTrack> structure_tracks(const FloorPlan& plan) {
  std::vector<SceneTrack> out;
  for (const auto& s : plan.structures) {
    DomainObject o{s.id, ObjectKind::floorplan_structure, std::string(label(s.type)), std::nullopt};
    out.push_back({std::move(o), SpaceTimeHistory::constant(s.polygon())});
  }
  return out;
}

}  // namespace scenesem
