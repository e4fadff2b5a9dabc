#include <benchmark/benchmark.h>

#include <random>

#include "scenesem/calculi.hpp"
#include "scenesem/floorplan.hpp"
#include "scenesem/interactions.hpp"
#include "scenesem/scene_io.hpp"
#include "scenesem/synthetic.hpp"

using namespace scenesem;

namespace {

std::vector<std::pair<AABox, AABox>> random_pairs(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> c(0, 40);
  auto box = [&] {
    int x0 = c(rng), x1 = c(rng), y0 = c(rng), y1 = c(rng);
    if (x0 == x1) ++x1;
    if (y0 == y1) ++y1;
    return AABox::rect(std::min(x0, x1) * 0.25, std::min(y0, y1) * 0.25, std::max(x0, x1) * 0.25,
                       std::max(y0, y1) * 0.25);
  };
  std::vector<std::pair<AABox, AABox>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(box(), box());
  return out;
}

void BM_Rcc8Boxes(benchmark::State& st) {
  const auto pairs = random_pairs(1024);
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& [a, b] = pairs[i++ & 1023];
    benchmark::DoNotOptimize(rcc8(a, b));
  }
}
BENCHMARK(BM_Rcc8Boxes);

void BM_Rcc8Polygons(benchmark::State& st) {
  std::vector<std::pair<Polygon2, Polygon2>> polys;
  for (const auto& [a, b] : random_pairs(256)) polys.emplace_back(polygon_from_rect(a), polygon_from_rect(b));
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& [a, b] = polys[i++ & 255];
    benchmark::DoNotOptimize(rcc8(a, b));
  }
}
BENCHMARK(BM_Rcc8Polygons);

void BM_Allen(benchmark::State& st) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 10);
  std::vector<std::pair<TimeInterval, TimeInterval>> iv;
  for (int i = 0; i < 1024; ++i) {
    const double a = u(rng), b = u(rng);
    iv.emplace_back(TimeInterval(a, a + 1 + u(rng)), TimeInterval(b, b + 1 + u(rng)));
  }
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& [x, y] = iv[i++ & 1023];
    benchmark::DoNotOptimize(allen(x, y));
  }
}
BENCHMARK(BM_Allen);

void BM_RecognizeSandwich(benchmark::State& st) {
  const auto fx = synth::sandwich();
  const SceneRecording scene = to_recording(fx.scene);
  const auto defs = builtin_defs();
  for (auto _ : st) benchmark::DoNotOptimize(recognize(scene, defs));
}
BENCHMARK(BM_RecognizeSandwich)->Unit(benchmark::kMillisecond);

void BM_KnnGraph(benchmark::State& st) {
  const PointCloud c = synth::noise_cloud(static_cast<std::size_t>(st.range(0)), 3);
  for (auto _ : st) benchmark::DoNotOptimize(knn_graph(c, 32));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_KnnGraph)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_ExtractFloorplan(benchmark::State& st) {
  const PointCloud c = synth::room_corridor_cloud(static_cast<double>(st.range(0)), 0.01, 7);
  for (auto _ : st) benchmark::DoNotOptimize(extract_floorplan(c, FloorplanConfig{}));
  st.counters["points"] = static_cast<double>(c.size());
}
BENCHMARK(BM_ExtractFloorplan)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
BENCHMARK_MAIN();
