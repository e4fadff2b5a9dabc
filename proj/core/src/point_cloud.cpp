#include "scenesem/point_cloud.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "scenesem/error.hpp"

namespace scenesem {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

bool read_numbers(const std::string& s, std::vector<double>& out) {
  out.clear();
  std::istringstream ss(s);
  std::string tok;
  while (ss >> tok) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v)) return false;
    out.push_back(v);
  }
  return true;
}

PointCloud read_ply(std::istream& in, std::size_t& line_no) {
  std::string line;
  std::size_t n_vertex = 0;
  bool in_vertex = false, saw_format = false;
  std::vector<std::string> props;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string kw;
    ss >> kw;
    if (kw == "format") {
      std::string fmt;
      ss >> fmt;
      if (fmt != "ascii") parse_fail(line_no, "only ASCII PLY is supported");
      saw_format = true;
    } else if (kw == "element") {
      std::string name;
      std::size_t count = 0;
      ss >> name >> count;
      in_vertex = name == "vertex";
      if (in_vertex) n_vertex = count;
    } else if (kw == "property") {
      if (in_vertex) {
        std::string type, name;
        ss >> type >> name;
        if (type == "list") parse_fail(line_no, "list properties on vertices are not supported");
        props.push_back(name);
      }
    } else if (kw == "end_header") {
      break;
    } else if (kw != "comment" && kw != "obj_info" && !kw.empty()) {
      parse_fail(line_no, "unexpected header keyword '" + kw + "'");
    }
  }
  if (!saw_format) parse_fail(line_no, "PLY header lacks a format line");
  auto col = [&](std::string_view name) -> int {
    auto it = std::find(props.begin(), props.end(), name);
    return it == props.end() ? -1 : static_cast<int>(it - props.begin());
  };
  const int ix = col("x"), iy = col("y"), iz = col("z");
  const int inx = col("nx"), iny = col("ny"), inz = col("nz");
  if (ix < 0 || iy < 0 || iz < 0) parse_fail(line_no, "PLY vertex lacks x/y/z");
  const bool normals = inx >= 0 && iny >= 0 && inz >= 0;

  PointCloud cloud;
  cloud.points.reserve(n_vertex);
  std::vector<double> v;
  for (std::size_t i = 0; i < n_vertex; ++i) {
    if (!std::getline(in, line)) parse_fail(line_no, "PLY ends before all vertices were read");
    ++line_no;
    if (!read_numbers(line, v) || v.size() < props.size())
      parse_fail(line_no, "malformed vertex record");
    cloud.points.push_back({v[ix], v[iy], v[iz]});
    if (normals) cloud.normals.push_back({v[inx], v[iny], v[inz]});
  }
  return cloud;
}

PointCloud read_xyz(std::istream& in, std::string first, std::size_t& line_no) {
  PointCloud cloud;
  std::vector<double> v;
  std::optional<std::size_t> width;
  auto take = [&](const std::string& line) {
    auto hash = line.find('#');
    std::string body = line.substr(0, hash);
    if (body.find_first_not_of(" \t\r") == std::string::npos) return;
    if (!read_numbers(body, v) || (v.size() != 3 && v.size() != 6))
      parse_fail(line_no, "expected 3 or 6 numbers");
    if (width && *width != v.size()) parse_fail(line_no, "inconsistent column count");
    width = v.size();
    cloud.points.push_back({v[0], v[1], v[2]});
    if (v.size() == 6) cloud.normals.push_back({v[3], v[4], v[5]});
  };
  take(first);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    take(line);
  }
  return cloud;
}

std::uint64_t cell_key(const Point3& p, double cell) {
  auto q = [&](double x) {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::floor(x / cell)) + (1 << 20)) &
           0x1FFFFF;
  };
  return (q(p.x) << 42) | (q(p.y) << 21) | q(p.z);
}

}  // namespace

PointCloud read_cloud(std::istream& in) {
  std::size_t line_no = 0;
  std::string first;
  while (std::getline(in, first)) {
    ++line_no;
    if (first.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  PointCloud cloud;
  if (first.rfind("ply", 0) == 0) {
    cloud = read_ply(in, line_no);
  } else {
    cloud = read_xyz(in, first, line_no);
  }
  for (auto& n : cloud.normals) {
    double len = norm(n);
    if (len < kGeomEps) throw Error(Errc::ParseError, "zero-length normal in cloud");
    n = n * (1.0 / len);
  }
  return cloud;
}

PointCloud read_cloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  return read_cloud(in);
}

void write_xyz(std::ostream& out, const PointCloud& cloud) {
  char buf[160];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto& p = cloud.points[i];
    int n = std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f", p.x, p.y, p.z);
    out.write(buf, n);
    if (cloud.has_normals()) {
      const auto& q = cloud.normals[i];
      n = std::snprintf(buf, sizeof buf, " %.6f %.6f %.6f", q.x, q.y, q.z);
      out.write(buf, n);
    }
    out.put('\n');
  }
}

PointCloud rotated(const PointCloud& cloud, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  auto rot = [&](Vec3 p) { return Vec3{c * p.x - s * p.y, s * p.x + c * p.y, p.z}; };
  PointCloud out = cloud;
  for (auto& p : out.points) p = rot(p);
  for (auto& n : out.normals) n = rot(n);
  return out;
}

PointCloud voxel_downsample(const PointCloud& cloud, double cell) {
  if (!(cell > 0.0)) throw Error(Errc::ConfigError, "voxel cell must be positive");
  std::unordered_map<std::uint64_t, std::uint32_t> slot;
  slot.reserve(cloud.size() / 2 + 1);
  std::vector<Vec3> sum;
  std::vector<double> w;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto [it, fresh] = slot.emplace(cell_key(cloud.points[i], cell), static_cast<std::uint32_t>(sum.size()));
    if (fresh) {
      sum.push_back({});
      w.push_back(0.0);
    }
    const double wi = cloud.weight(i);
    sum[it->second] = sum[it->second] + cloud.points[i] * wi;
    w[it->second] += wi;
  }
  PointCloud out;
  out.points.reserve(sum.size());
  for (std::size_t j = 0; j < sum.size(); ++j) out.points.push_back(sum[j] * (1.0 / w[j]));
  out.weights = std::move(w);
  return out;
}

KdTree::KdTree(const std::vector<Point3>& points) : pts_(points) {
  order_.resize(points.size());
  for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
  if (!order_.empty()) build(0, static_cast<std::uint32_t>(order_.size()));
}

int KdTree::build(std::uint32_t begin, std::uint32_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({begin, end});
  if (end - begin <= 12) return id;

  Vec3 lo = pts_[order_[begin]], hi = lo;
  for (std::uint32_t i = begin; i < end; ++i) {
    const Vec3& p = pts_[order_[i]];
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const Vec3 ext = hi - lo;
  const int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
  auto coord = [axis](const Vec3& p) { return axis == 0 ? p.x : axis == 1 ? p.y : p.z; };
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     double ca = coord(pts_[a]), cb = coord(pts_[b]);
                     return ca != cb ? ca < cb : a < b;
                   });
  nodes_[id].axis = axis;
  nodes_[id].split = coord(pts_[order_[mid]]);
  const int l = build(begin, mid);
  const int r = build(mid, end);
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

std::vector<std::uint32_t> KdTree::knn(const Point3& q, std::size_t k) const {
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item> heap;  // worst on top
  if (nodes_.empty() || k == 0) return {};
  auto visit = [&](auto&& self, int id) -> void {
    const Node& n = nodes_[id];
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        const Vec3 d = pts_[order_[i]] - q;
        Item it{dot(d, d), order_[i]};
        if (heap.size() < k) {
          heap.push(it);
        } else if (it < heap.top()) {
          heap.pop();
          heap.push(it);
        }
      }
      return;
    }
    const double qc = n.axis == 0 ? q.x : n.axis == 1 ? q.y : q.z;
    const double diff = qc - n.split;
    const int near = diff < 0 ? n.left : n.right;
    const int far = diff < 0 ? n.right : n.left;
    self(self, near);
    if (heap.size() < k || diff * diff <= heap.top().first) self(self, far);
  };
  visit(visit, 0);
  std::vector<std::uint32_t> out(heap.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = heap.top().second;
    heap.pop();
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> knn_graph(const PointCloud& cloud, std::size_t k) {
  KdTree tree(cloud.points);
  std::vector<std::vector<std::uint32_t>> out(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) out[i] = tree.knn(cloud.points[i], k);
  return out;
}

NormalEstimate estimate_normals(const PointCloud& cloud, std::size_t k) {
  if (cloud.size() <= k)
    throw Error(Errc::TooFewPoints, "normal estimation needs more than " + std::to_string(k) +
                                        " points, got " + std::to_string(cloud.size()));
  NormalEstimate out{cloud, std::vector<double>(cloud.size()), knn_graph(cloud, k + 1)};
  Vec3 c{};
  for (const auto& p : cloud.points) c = c + p;
  c = c * (1.0 / static_cast<double>(cloud.size()));

  out.cloud.normals.assign(cloud.size(), Vec3{0, 0, 1});
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto& nb = out.neighbors[i];
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (auto j : nb) mean += Eigen::Vector3d(cloud.points[j].x, cloud.points[j].y, cloud.points[j].z);
    mean /= static_cast<double>(nb.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (auto j : nb) {
      Eigen::Vector3d d = Eigen::Vector3d(cloud.points[j].x, cloud.points[j].y, cloud.points[j].z) - mean;
      cov += d * d.transpose();
    }
    solver.compute(cov);
    const Eigen::Vector3d ev = solver.eigenvalues();
    const Eigen::Vector3d n = solver.eigenvectors().col(0);
    const double total = ev.sum();
    out.curvature[i] = total > 0.0 ? std::max(0.0, ev(0)) / total : 0.0;
    Vec3 nn{n(0), n(1), n(2)};
    const double len = norm(nn);
    nn = len > kGeomEps ? nn * (1.0 / len) : Vec3{0, 0, 1};
    if (dot(nn, cloud.points[i] - c) < 0.0) nn = -nn;
    out.cloud.normals[i] = nn;
  }
  return out;
}

PlaneFit fit_plane(const PointCloud& cloud, const std::vector<std::uint32_t>& idx) {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  double wsum = 0.0;
  for (auto i : idx) {
    const double w = cloud.weight(i);
    mean += w * Eigen::Vector3d(cloud.points[i].x, cloud.points[i].y, cloud.points[i].z);
    wsum += w;
  }
  if (!(wsum > 0.0)) throw Error(Errc::TooFewPoints, "plane fit over an empty set");
  mean /= wsum;
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (auto i : idx) {
    Eigen::Vector3d d = Eigen::Vector3d(cloud.points[i].x, cloud.points[i].y, cloud.points[i].z) - mean;
    cov += cloud.weight(i) * d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  const Eigen::Vector3d n = solver.eigenvectors().col(0).normalized();
  return {{n(0), n(1), n(2)},
          {mean(0), mean(1), mean(2)},
          std::sqrt(std::max(0.0, solver.eigenvalues()(0)) / wsum)};
}

}  // namespace scenesem
