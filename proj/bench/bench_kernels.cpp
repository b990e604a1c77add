// Serial reference versus OpenMP kernels on representative sweeps.
// Run with --benchmark_filter=... to pick one; thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "mqed/kernels.hpp"

using namespace mqed;
using namespace mqed::kernels;

namespace {

const MaterialModel kLorentz = MaterialModel::lorentz(1.0, 1.0, 0.1);

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

template <bool Parallel>
void BM_MaterialTable(benchmark::State& state) {
  const auto omega = linspace(0.1, 5.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto rows = Parallel ? material_table_parallel(kLorentz, omega) : material_table_serial(kLorentz, omega);
    benchmark::DoNotOptimize(rows.data());
  }
}

template <bool Parallel>
void BM_CasimirSweep(benchmark::State& state) {
  const CavityGeometry1D geo{kLorentz, MaterialModel::conductivity(1.0), 1.0};
  const auto gaps = linspace(0.25, 4.0, static_cast<int>(state.range(0)));
  CasimirOptions opts;
  opts.mode = CasimirMode::real_axis;
  for (auto _ : state) {
    auto rows = Parallel ? casimir_sweep_parallel(geo, gaps, opts) : casimir_sweep_serial(geo, gaps, opts);
    benchmark::DoNotOptimize(rows.data());
  }
}

template <bool Parallel>
void BM_FrictionSweep(benchmark::State& state) {
  PlanarScenario base;
  base.left = {MaterialModel::conductivity(1.0), 0.0};
  base.right = MaterialModel::conductivity(1.0);
  const std::vector<double> vs = {0.002, 0.005, 0.01, 0.02, 0.05};
  const std::vector<double> gaps = {0.5, 1.0, 2.0, 4.0, 8.0};
  for (auto _ : state) {
    auto rows = Parallel ? friction_sweep_parallel(base, vs, gaps) : friction_sweep_serial(base, vs, gaps);
    benchmark::DoNotOptimize(rows.data());
  }
}

template <bool Parallel>
void BM_RateSweep(benchmark::State& state) {
  MovingProbe1D probe;
  probe.medium = kLorentz;
  const auto vs = linspace(0.05, 0.9, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto rows = Parallel ? rate_sweep_parallel(probe, vs) : rate_sweep_serial(probe, vs);
    benchmark::DoNotOptimize(rows.data());
  }
}

template <bool Parallel>
void BM_ReflectionGrid(benchmark::State& state) {
  const auto omega = linspace(0.05, 5.0, static_cast<int>(state.range(0)));
  const auto k = linspace(0.0, 50.0, 256);
  for (auto _ : state) {
    auto g = Parallel ? reflection_grid_parallel(kLorentz, omega, k) : reflection_grid_serial(kLorentz, omega, k);
    benchmark::DoNotOptimize(g.rp.data());
  }
}

template <bool Parallel>
void BM_SpectralDensity(benchmark::State& state) {
  const auto omega = linspace(0.05, 5.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto d = Parallel ? spectral_density_parallel(kLorentz, omega, DensityKind::correlation, 0.0, 1.0)
                      : spectral_density(kLorentz, omega, DensityKind::correlation, 0.0, 1.0);
    benchmark::DoNotOptimize(d.density.data());
  }
}

}  // namespace

BENCHMARK(BM_MaterialTable<false>)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaterialTable<true>)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CasimirSweep<false>)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CasimirSweep<true>)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrictionSweep<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrictionSweep<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RateSweep<false>)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RateSweep<true>)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReflectionGrid<false>)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReflectionGrid<true>)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralDensity<false>)->Arg(4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SpectralDensity<true>)->Arg(4096)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
