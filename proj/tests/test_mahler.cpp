#include <doctest.h>

#include <cmath>
#include <random>

#include "modmahler/lfun.hpp"
#include "modmahler/mahler.hpp"

using namespace mm;

namespace {
const long double kPi = 3.14159265358979323846264338327950288L;

TorusQuadrature quick() {
  TorusQuadrature q;
  q.base_n = 64;
  q.levels = 4;
  return q;
}
}  // namespace

TEST_CASE("monomials and constants") {
  TorusQuadrature q = quick();
  MahlerEstimate c = mahler_measure(LaurentPoly3::parse("7/2"), q);
  CHECK(std::abs(c.value - std::log(3.5L)) < 1e-15L);
  MahlerEstimate x = mahler_measure(LaurentPoly3::parse("X"), q);
  CHECK(std::abs(x.value) < 1e-15L);
  MahlerEstimate m = mahler_measure(LaurentPoly3::parse("3*X^2*Y^-1*Z"), q);
  CHECK(std::abs(m.value - std::log(3.0L)) < 1e-15L);
}

TEST_CASE("one-variable Jensen is exact") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int it = 0; it < 12; ++it) {
    // m(Z - a) = log^+ |a| for rational a
    Rat a(static_cast<long>(uni(rng) * 100), 100);
    LaurentPoly3 p;
    p.add_term({0, 0, 1}, Rat(1));
    p.add_term({0, 0, 0}, -a);
    long double m = mahler_measure_1var(p, 2);
    long double expect = std::max(0.0L, std::log(std::abs(to_ld(a))));
    CHECK(std::abs(m - expect) < 1e-14L);
  }
}

TEST_CASE("m(1 + X + Y + Z) = 7 zeta(3) / (2 pi^2)") {
  TorusQuadrature q;
  q.base_n = 96;
  q.levels = 4;
  MahlerEstimate est = mahler_measure(LaurentPoly3::parse("1 + X + Y + Z"), q);
  long double smyth = 7.0L * zeta3() / (2.0L * kPi * kPi);
  CHECK(std::abs(est.value - smyth) < 1e-4L);
  // reported error estimate should not be wildly off
  CHECK(std::abs(est.value - smyth) < 50 * est.error + 1e-4L);
}

TEST_CASE("multiplicativity m(PQ) = m(P) + m(Q) within combined error") {
  TorusQuadrature q = quick();
  LaurentPoly3 a = LaurentPoly3::parse("Z + 2 + X");
  LaurentPoly3 b = LaurentPoly3::parse("Z - 3 + Y");
  MahlerEstimate ma = mahler_measure(a, q);
  MahlerEstimate mb = mahler_measure(b, q);
  MahlerEstimate mab = mahler_measure(a * b, q);
  CHECK(std::abs(mab.value - ma.value - mb.value) < 2e-4L);
}

TEST_CASE("variable-permutation invariance") {
  TorusQuadrature q = quick();
  LaurentPoly3 p = LaurentPoly3::parse("1 + X + Y + Z");
  MahlerEstimate mz = mahler_measure(p, q, 2);
  MahlerEstimate mx = mahler_measure(p, q, 0);
  MahlerEstimate my = mahler_measure(p, q, 1);
  CHECK(std::abs(mz.value - mx.value) < 2e-4L);
  CHECK(std::abs(mz.value - my.value) < 2e-4L);
}

TEST_CASE("monte carlo: m(2) and smyth within 3 standard errors") {
  MahlerEstimate c = mahler_montecarlo(LaurentPoly3::parse("2"), 10000, 1);
  CHECK(std::abs(c.value - std::log(2.0L)) < 1e-12L);
  CHECK(c.error < 1e-12L);

  MahlerEstimate s = mahler_montecarlo(LaurentPoly3::parse("1 + X + Y + Z"),
                                       400000, 20260809);
  long double smyth = 7.0L * zeta3() / (2.0L * kPi * kPi);
  CHECK(std::abs(s.value - smyth) < 3.0L * s.error);
}

TEST_CASE("quadrature vs monte carlo on P2") {
  LaurentPoly3 p = LaurentPoly3::parse("X + X^-1 + Y + Y^-1 + Z + Z^-1 - 2");
  TorusQuadrature q = quick();
  MahlerEstimate quad = mahler_measure(p, q);
  MahlerEstimate mc = mahler_montecarlo(p, 400000, 4242);
  CHECK(std::abs(quad.value - mc.value) < 3.0L * mc.error + 1e-4L);
}

TEST_CASE("deninger fibration diagnostics for P2") {
  DeningerReport rep = deninger_fiber_diagnostics(300);
  CHECK(rep.pass);
  CHECK(rep.max_poly_residual < 1e-12L);
  CHECK(rep.max_fibre_residual < 1e-12L);
  // Z ranges over (1, 3 + 2 sqrt 2]; the corner (pi,pi) attains the top
  long double top = 3.0L + 2.0L * std::sqrt(2.0L);
  CHECK(rep.z_min > 1.0L);
  CHECK(rep.z_max <= top + 1e-12L);
  CHECK(rep.z_max > top - 0.05L);
}
