#include <benchmark/benchmark.h>

#include <vector>

#include "heis/dimension.hpp"
#include "heis/lattice.hpp"
#include "heis/lemma_lab.hpp"
#include "heis/measures.hpp"
#include "heis/parallel.hpp"
#include "heis/random.hpp"

using namespace heis;

namespace {

std::vector<HPoint> random_points(std::size_t n, std::uint64_t seed) {
  auto g = stream(seed, 0);
  std::vector<HPoint> pts;
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1));
  return pts;
}

void BM_KoranyiDist(benchmark::State& state) {
  const auto pts = random_points(1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(koranyi_dist(pts[i & 1023], pts[(i * 7 + 3) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_KoranyiDist);

void BM_BoxCount(benchmark::State& state) {
  const WeightedCloud cube = sample_cube(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(box_count(cube, 1.0 / 16));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BoxCount)->Arg(10000)->Arg(100000);

void BM_BallQuery(benchmark::State& state) {
  const auto pts = random_points(100000, 2);
  const BallIndex index(pts, 0.1);
  const auto centres = random_points(256, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    std::size_t hits = 0;
    index.visit_ball(centres[i++ & 255], 0.1, [&](std::size_t, double) { ++hits; });
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_BallQuery);

void BM_NearAngleSet(benchmark::State& state) {
  std::vector<std::pair<HPoint, HPoint>> pairs;
  for (std::size_t i = 0; i < 64; ++i) pairs.push_back(transversality_pair(PairModel::colliding, 1, i));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [v, w] = pairs[i++ & 63];
    benchmark::DoNotOptimize(near_angle_set(v, w, 1e-2));
  }
}
BENCHMARK(BM_NearAngleSet)->Unit(benchmark::kMicrosecond);

void BM_TripleSolve(benchmark::State& state) {
  const auto pts = random_points(3072, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = 3 * (i++ & 1023);
    benchmark::DoNotOptimize(triple_point_solve(pts[k], pts[k + 1], pts[k + 2]));
  }
}
BENCHMARK(BM_TripleSolve);

void BM_Incidence(benchmark::State& state) {
  set_thread_count(1);
  const WeightedCloud cube = sample_cube(static_cast<std::size_t>(state.range(0)), 5);
  const IncidenceConfig c = make_incidence_config(3.0, 1.0 / 16, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(incidence_experiment(cube, c).count);
}
BENCHMARK(BM_Incidence)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
