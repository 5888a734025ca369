#include <benchmark/benchmark.h>

#include "zsk/applications.hpp"
#include "zsk/compression.hpp"
#include "zsk/descent.hpp"
#include "zsk/graph.hpp"
#include "zsk/zeroset.hpp"

using namespace zsk;

static void BM_MaxMatching(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Rng g = make_rng(1);
  std::vector<Edge> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (uniform01(g) < 0.2) e.push_back({a, b});
  for (auto _ : state) benchmark::DoNotOptimize(max_matching(n, e));
}
BENCHMARK(BM_MaxMatching)->Arg(32)->Arg(128)->Arg(512);

static void BM_Compression(benchmark::State& state) {
  auto m = hamming_cube(static_cast<int>(state.range(0))).space;
  auto phi = snowflake_embed(m, 0.5);
  auto mu = PointMeasure::counting(m.size());
  for (auto _ : state) benchmark::DoNotOptimize(universal_compression(m, mu, 2.0, 4.0, phi));
}
BENCHMARK(BM_Compression)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_GeneralZeroSetDraw(benchmark::State& state) {
  auto m = grid(static_cast<int>(state.range(0)), 2, 1).space;
  auto d = general_zeroset_sampler(m, PointMeasure::counting(m.size()), m.diameter() / 4);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(d.draw(i++));
}
BENCHMARK(BM_GeneralZeroSetDraw)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

static void BM_EmbedPipeline(benchmark::State& state) {
  auto m = hamming_cube(static_cast<int>(state.range(0))).space;
  EmbedConfig cfg;
  cfg.N = 128;
  for (auto _ : state)
    benchmark::DoNotOptimize(euclidean_embed_pipeline(m, PointMeasure::counting(m.size()), EuclideanMap{}, cfg, 1));
}
BENCHMARK(BM_EmbedPipeline)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_SdpSolve(benchmark::State& state) {
  auto inst = random_cut_instance(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(sdp_gl_solve(inst));
}
BENCHMARK(BM_SdpSolve)->Arg(6)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
