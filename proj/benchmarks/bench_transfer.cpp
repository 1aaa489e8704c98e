#include <benchmark/benchmark.h>

#include "hupcf/transfer.hpp"

using namespace hupcf;

static void BM_ulam_assembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    TransferMatrix m = ulam_matrix(1.0, n, 512);
    benchmark::DoNotOptimize(m.entries.data());
  }
}
BENCHMARK(BM_ulam_assembly)->Arg(256)->Arg(1024);

static void BM_composed_assembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    TransferMatrix w = composed_map_ulam_matrix(1.0, n);
    benchmark::DoNotOptimize(w.entries.data());
  }
}
BENCHMARK(BM_composed_assembly)->Arg(256)->Arg(1024);

static void BM_spectrum_dense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TransferMatrix m = ulam_matrix(0.7, n, 512);
  for (auto _ : state) {
    SpectrumReport rep = spectrum(m, 4);
    benchmark::DoNotOptimize(rep.spectral_radius);
  }
}
BENCHMARK(BM_spectrum_dense)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_apply_transfer(benchmark::State& state) {
  std::vector<double> ts(1001);
  for (int i = 0; i <= 1000; ++i) ts[i] = -0.9 + 1.8 * i / 1000.0;
  const auto omega = [](double t) { return 1.0 / (1.0 - t * t); };
  for (auto _ : state) {
    TransferApplied out = apply_transfer(omega, ts, 1.0, 512);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_apply_transfer);
