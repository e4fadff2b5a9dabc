#include "scenesem/dbscan.hpp"

#include <cmath>
#include <numbers>

namespace scenesem {

std::vector<int> dbscan(std::size_t n, double eps, std::size_t min_pts,
                        const std::function<double(std::size_t, std::size_t)>& dist) {
  constexpr int kUnvisited = -2;
  std::vector<int> label(n, kUnvisited);
  auto region = [&](std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n; ++j)
      if (dist(i, j) <= eps) out.push_back(j);
    return out;
  };
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != kUnvisited) continue;
    auto seeds = region(i);
    if (seeds.size() < min_pts) {
      label[i] = kDbscanNoise;
      continue;
    }
    const int c = next++;
    label[i] = c;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const std::size_t j = seeds[s];
      if (label[j] == kDbscanNoise) label[j] = c;  // border item
      if (label[j] != kUnvisited) continue;
      label[j] = c;
      auto more = region(j);
      if (more.size() >= min_pts) seeds.insert(seeds.end(), more.begin(), more.end());
    }
  }
  return label;
}

double angular_distance_mod_pi(double a, double b) {
  double d = std::fmod(std::abs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

}  // namespace scenesem
