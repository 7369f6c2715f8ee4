#include <benchmark/benchmark.h>

#include "trefftz/harness.hpp"

using namespace trefftz;

static void BM_BasisConstruction(benchmark::State& state) {
  const Material m(1.0, 1.0);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ElasticBasis(m, k).size());
}
BENCHMARK(BM_BasisConstruction)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Quadrature(benchmark::State& state) {
  const SurfaceSpec s = Ellipsoid{Vec3::Zero(), Vec3(1, 1.3, 1.7)};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make_quadrature(s, n, 2 * n).area());
}
BENCHMARK(BM_Quadrature)->Arg(32)->Arg(64);

static void BM_Fit(benchmark::State& state) {
  const Material m(1.0, 1.0);
  const SurfaceSpec s = Sphere{};
  const auto q = make_quadrature(s, 32, 64);
  const auto md = kelvin_data(m, s, q, Vec3(0, 0, 3), 0, Problem::IV);
  const ElasticBasis basis(m, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit(Problem::IV, md.data, basis, q).residual_norm);
}
BENCHMARK(BM_Fit)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
