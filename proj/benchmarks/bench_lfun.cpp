#include <benchmark/benchmark.h>

#include "modmahler/lfun.hpp"

using namespace mm;

static void BM_IncompleteGamma(benchmark::State& state) {
  long double s = 1.5L, x = 0.3L;
  for (auto _ : state) {
    benchmark::DoNotOptimize(upper_incomplete_gamma(s, x));
    benchmark::DoNotOptimize(upper_incomplete_gamma(s, 7.0L));
  }
}
BENCHMARK(BM_IncompleteGamma);

static void BM_LambdaCusp(benchmark::State& state) {
  const NewformTable& f = newform("f8");
  int eps = fricke_sign(f, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(lambda_cusp(f, 8, 3.0L, eps, 1e-12L));
}
BENCHMARK(BM_LambdaCusp);

static void BM_LambdaEisReg(benchmark::State& state) {
  std::vector<EisTerm> terms{
      {Cyclotomic(Rat(4)), DirichletChar::by_name("chi4"), DirichletChar(), 1},
      {Cyclotomic(Rat(-32)), DirichletChar::by_name("chi4"), DirichletChar(), 2}};
  for (auto _ : state) {
    ClosedFormValue v = lambda_eis_reg(terms, 8);
    benchmark::DoNotOptimize(v.exact);
  }
}
BENCHMARK(BM_LambdaEisReg);

BENCHMARK_MAIN();
