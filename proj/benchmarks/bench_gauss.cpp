#include <benchmark/benchmark.h>

#include "hupcf/gauss.hpp"
#include "hupcf/measures.hpp"

using namespace hupcf;

static void BM_orbit_double(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    OrbitRecord rec = orbit(IntervalPoint(0.612398741), steps, 1.0);
    benchmark::DoNotOptimize(rec.log2_derivative_product);
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_orbit_double)->Arg(1000)->Arg(10000);

static void BM_orbit_mpfr(benchmark::State& state) {
  const int prec = static_cast<int>(state.range(0));
  for (auto _ : state) {
    OrbitRecord rec = random_orbit(7, 1000, 1.0, prec);
    benchmark::DoNotOptimize(rec.log2_derivative_product);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_orbit_mpfr)->Arg(1024)->Arg(16384);

static void BM_exact_orbit_sweep(benchmark::State& state) {
  const std::int64_t qmax = state.range(0);
  for (auto _ : state) {
    long terminated = 0;
    for (std::int64_t q = 1; q <= qmax; ++q)
      for (std::int64_t p = -q + 1; p <= q; ++p) {
        if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
        const Rational r(p, q);
        terminated += orbit(IntervalPoint(r.to_double(), r), 100000, 1.0, 53, true)
                          .terminated != Termination::none;
      }
    benchmark::DoNotOptimize(terminated);
  }
}
BENCHMARK(BM_exact_orbit_sweep)->Arg(100)->Arg(300);

static void BM_survivor_set(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    IntervalUnion e = survivor_set(0.8, depth, 256);
    benchmark::DoNotOptimize(e.measure_upper);
  }
}
BENCHMARK(BM_survivor_set)->Arg(4)->Arg(8);

static void BM_even_cf_roundtrip(benchmark::State& state) {
  double x = 0.437281;
  for (auto _ : state) {
    const EvenCfExpansion e = even_cf_expand(IntervalPoint(x), 40);
    benchmark::DoNotOptimize(even_cf_reconstruct(e.digits, e.tail).value);
  }
}
BENCHMARK(BM_even_cf_roundtrip);
