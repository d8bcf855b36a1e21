#include <benchmark/benchmark.h>

#include "modmahler/eis_series.hpp"
#include "modmahler/rz.hpp"
#include "modmahler/siegel.hpp"

using namespace mm;

static void BM_SiegelQexp(benchmark::State& state) {
  long window = state.range(0);
  for (auto _ : state) {
    QSeries s = siegel_qexp(SiegelIndex(0, 3, 8), window);
    benchmark::DoNotOptimize(s.raw().size());
  }
}
BENCHMARK(BM_SiegelQexp)->Arg(16)->Arg(64);

static void BM_GSeriesProduct(benchmark::State& state) {
  long order = state.range(0);
  QSeries a = G_qexp(2, 4, 3, 8, order, true);
  QSeries b = G_qexp(1, 2, 6, 8, order, true);
  for (auto _ : state) {
    QSeries p = a * b;
    benchmark::DoNotOptimize(p.raw().size());
  }
}
BENCHMARK(BM_GSeriesProduct)->Arg(64)->Arg(256);

static void BM_P2Identification(benchmark::State& state) {
  auto u = unit_to_eis0(UnitProduct::parse("-i * g(0,3)^2 * g(0,1)^-2 @ 8"));
  TorsionDivisor d;
  d.N = 8;
  d.add({0, 0}, Rat(-1));
  d.add({0, 2}, Rat(1));
  d.add({0, 4}, Rat(1));
  d.add({0, 6}, Rat(-1));
  PhiCombo base = make_base_phi(u.combo, milnor_to_eis(d, d));
  ManinDecomposition dec =
      manin_decompose({0, 1}, Cusp(1, 2), Cusp::infinity(), true);
  RZProduct F = phi_to_F(phi_pullback(base, dec.terms));
  for (auto _ : state) {
    FormIdentification id = expand_and_identify(F, rat(1, 8), 8);
    benchmark::DoNotOptimize(id.identified);
  }
}
BENCHMARK(BM_P2Identification);

BENCHMARK_MAIN();
