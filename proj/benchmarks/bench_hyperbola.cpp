#include <benchmark/benchmark.h>

#include "hupcf/hyperbola.hpp"

using namespace hupcf;

static void BM_fourier_axis1(benchmark::State& state) {
  const AcAnnihilator ann = ac_annihilator(2.0, 1);
  for (auto _ : state) {
    FourierValue v = fourier_transform(ann.measure, 7.0, 0.0);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_fourier_axis1)->Unit(benchmark::kMillisecond);

static void BM_fourier_axis2(benchmark::State& state) {
  const AcAnnihilator ann = ac_annihilator(2.0, 1);
  for (auto _ : state) {
    FourierValue v = fourier_transform(ann.measure, 0.0, 14.0);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_fourier_axis2)->Unit(benchmark::kMillisecond);

static void BM_lattice_residual(benchmark::State& state) {
  const AcAnnihilator ann = ac_annihilator(2.0, 1);
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) {
    LatticeResidualReport rep =
        lattice_residual(ann.measure, {1.0, 2.0, r, r});
    benchmark::DoNotOptimize(rep.max_abs);
  }
}
BENCHMARK(BM_lattice_residual)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_density_gap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    DensityGapReport rep = density_gap(0.5, n, BasisTarget{false, 1});
    benchmark::DoNotOptimize(rep.residual);
  }
}
BENCHMARK(BM_density_gap)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
