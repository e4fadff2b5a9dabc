#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace scenesem {

inline constexpr int kDbscanNoise = -1;

/// Density-based clustering over n items under an arbitrary metric. A core
/// item has at least min_pts items (itself included) within eps. Labels are
/// 0-based in order of first discovery; noise is kDbscanNoise.
std::vector<int> dbscan(std::size_t n, double eps, std::size_t min_pts,
                        const std::function<double(std::size_t, std::size_t)>& dist);

/// Undirected line orientation distance: min(|a - b|, pi - |a - b|) on angles mod pi.
double angular_distance_mod_pi(double a, double b);

}  // namespace scenesem
