#include <benchmark/benchmark.h>

#include <random>

#include "curvebump/curvature.hpp"
#include "curvebump/inference.hpp"
#include "curvebump/kde.hpp"
#include "curvebump/levelset.hpp"
#include "curvebump/mixture.hpp"

namespace {

using namespace curvebump;

GridSpec square(int d, double half, int nodes) {
  return GridSpec::uniform(Vector::Constant(d, -half), Vector::Constant(d, half), nodes);
}

void BM_KdeGrid2d(benchmark::State& state) {
  const KernelDensity kde(sample_mixture(boomerang_mixture(), state.range(0), 1),
                          BandwidthSpec::fixed(0.5));
  const GridSpec grid = square(2, 4.0, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kde.derivatives_on_grid(grid));
  state.SetItemsProcessed(state.iterations() * state.range(0) * grid.node_count());
}
BENCHMARK(BM_KdeGrid2d)->Args({800, 161})->Args({8000, 161})->Unit(benchmark::kMillisecond);

void BM_KdePointwise(benchmark::State& state) {
  const KernelDensity kde(sample_mixture(boomerang_mixture(), state.range(0), 1),
                          BandwidthSpec::fixed(0.5));
  Vector x(2);
  x << 0.3, -0.2;
  for (auto _ : state) benchmark::DoNotOptimize(kde.derivatives(x));
}
BENCHMARK(BM_KdePointwise)->Arg(1000)->Arg(10000);

void BM_Eigenvalues(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Matrix> matrices;
  for (int k = 0; k < 1024; ++k) {
    Matrix m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = r; c < d; ++c) m(r, c) = m(c, r) = u(rng);
    matrices.push_back(m);
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ordered_eigenvalues(matrices[k++ & 1023]));
}
BENCHMARK(BM_Eigenvalues)->Arg(2)->Arg(3);

void BM_MarchingSquares(benchmark::State& state) {
  const auto field = sample_function(square(2, 2.0, static_cast<int>(state.range(0))),
                                     [](const Vector& x) { return 1.0 - x.squaredNorm(); });
  for (auto _ : state) benchmark::DoNotOptimize(extract_zero_level_2d(field));
}
BENCHMARK(BM_MarchingSquares)->Arg(201)->Arg(801)->Unit(benchmark::kMicrosecond);

void BM_MarchingCubes(benchmark::State& state) {
  const auto field = sample_function(square(3, 2.0, static_cast<int>(state.range(0))),
                                     [](const Vector& x) { return 1.0 - x.squaredNorm(); });
  for (auto _ : state) benchmark::DoNotOptimize(extract_zero_level_3d(field));
}
BENCHMARK(BM_MarchingCubes)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_Bootstrap1d(benchmark::State& state) {
  const KernelDensity kde(sample_mixture(GaussianMixture::standard_normal(1), 400, 1),
                          BandwidthSpec::fixed(0.4));
  const GridSpec grid = square(1, 4.0, 401);
  BootstrapPlan plan;
  plan.replicates = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(bootstrap_sup_errors(kde, grid, plan, {SecondOrderOperator::laplacian()}));
}
BENCHMARK(BM_Bootstrap1d)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
