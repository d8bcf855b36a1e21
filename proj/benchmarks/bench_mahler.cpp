#include <benchmark/benchmark.h>

#include "modmahler/mahler.hpp"

using namespace mm;

static void BM_MahlerGrid(benchmark::State& state) {
  LaurentPoly3 p = LaurentPoly3::parse("X + X^-1 + Y + Y^-1 + Z + Z^-1 - 2");
  TorusQuadrature q;
  q.base_n = static_cast<int>(state.range(0));
  q.levels = 1;
  q.threads = 1;
  for (auto _ : state) {
    MahlerEstimate est = mahler_measure(p, q);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_MahlerGrid)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_MahlerQuarticNodes(benchmark::State& state) {
  // the Gamma(4) quartic costs one 4x4 companion eigenproblem per node
  LaurentPoly3 p = LaurentPoly3::parse(
      "X^2*Y^2*Z^3 + 2*X^2*Y*Z^3 + X^2*Z^3 + 2*X*Y^2*Z^3 - 4*X*Y*Z^3 + 2*X*Z^3 + "
      "Y^2*Z^3 + 2*Y*Z^3 + Z^3 + X^2*Y^2*Z + 2*X^2*Y*Z + X^2*Z + 2*X*Y^2*Z - "
      "4*X*Y*Z + 2*X*Z + Y^2*Z + 2*Y*Z + Z - 2*X*Y*Z^4 - 12*X*Y*Z^2 - 2*X*Y");
  TorusQuadrature q;
  q.base_n = 64;
  q.levels = 1;
  q.threads = 1;
  for (auto _ : state) {
    MahlerEstimate est = mahler_measure(p, q);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_MahlerQuarticNodes)->Unit(benchmark::kMillisecond);

static void BM_MonteCarlo(benchmark::State& state) {
  LaurentPoly3 p = LaurentPoly3::parse("1 + X + Y + Z");
  for (auto _ : state) {
    MahlerEstimate est = mahler_montecarlo(p, 20000, 7);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
