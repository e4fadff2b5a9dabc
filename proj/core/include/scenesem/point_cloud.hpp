#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scenesem/geometry.hpp"

namespace scenesem {

/// Points in meters, +z up. `normals` and `weights` are either empty or
/// parallel to `points`; a weight counts the raw points a sample stands for.
struct PointCloud {
  std::vector<Point3> points;
  std::vector<Vec3> normals;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }
  bool has_normals() const noexcept { return !normals.empty(); }
  double weight(std::size_t i) const { return weights.empty() ? 1.0 : weights[i]; }
};

/// ASCII PLY (x y z [nx ny nz] in any property order) or whitespace XYZ with
/// optional normals. Throws ParseError citing the offending line.
PointCloud read_cloud(std::istream& in);
PointCloud read_cloud(const std::filesystem::path& path);
/// Whitespace XYZ, 6 decimals, normals appended when present.
void write_xyz(std::ostream& out, const PointCloud& cloud);

/// Rotation about the z axis through the origin.
PointCloud rotated(const PointCloud& cloud, double angle);

/// Centroid per occupied cubic cell, in order of first occurrence; weights
/// accumulate the raw counts.
PointCloud voxel_downsample(const PointCloud& cloud, double cell);

/// Static kd-tree over a point set; queries are deterministic (ties broken
/// by index).
class KdTree {
 public:
  explicit KdTree(const std::vector<Point3>& points);

  /// Indices of the k nearest points to q, nearest first (q itself included
  /// when it is one of the indexed points).
  std::vector<std::uint32_t> knn(const Point3& q, std::size_t k) const;

 private:
  struct Node {
    std::uint32_t begin, end;  // range in order_
    std::int32_t left = -1, right = -1;
    int axis = 0;
    double split = 0.0;
  };
  int build(std::uint32_t begin, std::uint32_t end);

  const std::vector<Point3>& pts_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

/// k-neighbourhoods (self first) for every point.
std::vector<std::vector<std::uint32_t>> knn_graph(const PointCloud& cloud, std::size_t k);

struct NormalEstimate {
  PointCloud cloud;                                   // with normals
  std::vector<double> curvature;                      // lambda_min / sum(lambda)
  std::vector<std::vector<std::uint32_t>> neighbors;  // k-neighbourhoods
};

/// Smallest principal axis of each k-neighbourhood covariance, flipped to
/// point away from the cloud centroid. Throws TooFewPoints when size <= k.
NormalEstimate estimate_normals(const PointCloud& cloud, std::size_t k);

/// Weighted total-least-squares plane: unit normal and centroid.
struct PlaneFit {
  Vec3 normal;
  Point3 centroid;
  double rms = 0.0;
};
PlaneFit fit_plane(const PointCloud& cloud, const std::vector<std::uint32_t>& idx);

}  // namespace scenesem
