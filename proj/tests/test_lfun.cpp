#include <doctest.h>

#include <cmath>

#include "modmahler/lfun.hpp"

using namespace mm;

namespace {
const long double kPi = 3.14159265358979323846264338327950288L;

EisTerm term(const Rat& c, const std::string& phi, const std::string& psi, long t) {
  return {Cyclotomic(c), DirichletChar::by_name(phi), DirichletChar::by_name(psi), t};
}

// dual-method oracle: Lambda_N(f, s) by adaptive Simpson over
// int_1^oo f(iy/sqrt(N)) (y^s + eps y^{3-s}) dy/y
long double lambda_by_quadrature(const NewformTable& f, long N, long double s,
                                 int eps) {
  long double rn = std::sqrt(static_cast<long double>(N));
  auto integrand = [&](long double y) {
    long double q = std::exp(-2.0L * kPi * y / rn);
    long double acc = 0;
    long double qn = 1;
    for (size_t n = 1; n <= f.count(); ++n) {
      qn *= q;
      if (qn < 1e-28L) break;
      acc += static_cast<long double>(f.an(n)) * qn;
    }
    return acc * (std::pow(y, s) + eps * std::pow(y, 3.0L - s)) / y;
  };
  // composite Simpson; the integrand decays like e^{-2 pi y / sqrt N}, so the
  // window scales with sqrt(N)
  const int segs = 40000;
  const long double a = 1.0L, b = 5.2L * std::sqrt(static_cast<long double>(N));
  const long double h = (b - a) / segs;
  long double acc = integrand(a) + integrand(b);
  for (int i = 1; i < segs; ++i)
    acc += integrand(a + h * i) * ((i % 2) ? 4.0L : 2.0L);
  return acc * h / 3.0L;
}
}  // namespace

TEST_CASE("incomplete gamma sanity") {
  // Gamma(1,x) = e^{-x}; Gamma(3,x) = (x^2+2x+2) e^{-x}
  for (long double x : {0.3L, 1.0L, 2.7L, 9.0L}) {
    CHECK(std::abs(upper_incomplete_gamma(1.0L, x) - std::exp(-x)) < 1e-17L);
    long double g3 = (x * x + 2 * x + 2) * std::exp(-x);
    CHECK(std::abs(upper_incomplete_gamma(3.0L, x) - g3) < 1e-15L * g3 + 1e-20L);
  }
  // E1(1) = 0.21938393439552027368...
  CHECK(std::abs(upper_incomplete_gamma(0.0L, 1.0L) - 0.219383934395520274L) < 1e-15L);
}

TEST_CASE("zeta(3) dual computation and zeta'(-2)") {
  CHECK(std::abs(zeta3() - zeta3_reference()) < 1e-14L);
  CHECK(std::abs(zeta_prime_minus2() + zeta3_reference() / (4.0L * kPi * kPi)) < 1e-14L);
}

TEST_CASE("Fricke signs") {
  CHECK(fricke_sign(newform("f8"), 8) == 1);    // paper: W_8 f = f
  CHECK(fricke_sign(newform("f12"), 12) == 1);  // numeric oracle
  CHECK(fricke_sign(newform("f16"), 16) == 1);  // numeric oracle
}

TEST_CASE("Lambda for f8: functional equation and dual-method value") {
  const NewformTable& f8 = newform("f8");
  int eps = fricke_sign(f8, 8);
  long double l0 = lambda_cusp(f8, 8, 0.0L, eps);
  long double l3 = lambda_cusp(f8, 8, 3.0L, eps);
  CHECK(std::abs(l0 - l3) < 1e-12L);

  long double a = lambda_cusp(f8, 8, 1.3L, eps);
  long double b = lambda_cusp(f8, 8, 1.7L, eps);
  CHECK(std::abs(a - eps * b) < 1e-10L);

  // independent quadrature of the split integral
  long double q3 = lambda_by_quadrature(f8, 8, 3.0L, eps);
  CHECK(std::abs(q3 - l3) < 1e-10L);
  CHECK(l3 > 0);
}

TEST_CASE("Lambda functional equation residuals on an s-grid (all newforms)") {
  for (auto& [label, N] : std::vector<std::pair<std::string, long>>{
           {"f8", 8}, {"f12", 12}, {"f16", 16}}) {
    const NewformTable& f = newform(label);
    int eps = fricke_sign(f, N);
    for (long double s = 0.25L; s < 3.0L; s += 0.25L) {
      long double a = lambda_cusp(f, N, s, eps);
      long double b = lambda_cusp(f, N, 3.0L - s, eps);
      CHECK(std::abs(a - eps * b) < 1e-9L);
      // structural symmetry is built into the series; cross-check one side
      // against the independent quadrature
    }
    long double mid = lambda_cusp(f, N, 1.5L, eps);
    long double quad = lambda_by_quadrature(f, N, 1.5L, eps);
    CHECK(std::abs(mid - quad) < 1e-9L * std::max(1.0L, std::abs(mid)));
  }
}

TEST_CASE("Lambda(E3^{chi4,1,1}, 0) = -zeta(3)/(4 pi^2) symbolically") {
  ClosedFormValue v = lambda_eis_reg({term(Rat(1), "chi4", "1", 1)}, 8);
  CHECK(v.exact);
  CHECK(v.c_zeta3_over_pi2 == rat(-1, 4));
  CHECK(v.c_one == 0);
  CHECK(v.c_log_pi == 0);
  CHECK(v.c_log_prime.empty());
  CHECK(std::abs(v.value() + zeta3() / (4.0L * kPi * kPi)) < 1e-16L);
}

TEST_CASE("Lambda*(4 E3^{chi4,1,1} - 32 E3^{chi4,1,2}, 0) = 7 zeta(3)/pi^2") {
  ClosedFormValue v = lambda_eis_reg(
      {term(Rat(4), "chi4", "1", 1), term(Rat(-32), "chi4", "1", 2)}, 8);
  CHECK(v.exact);
  CHECK(v.c_zeta3_over_pi2 == Rat(7));
  CHECK(v.c_log_prime.empty());
}

TEST_CASE("Lambda(E3^{1,chi3,1} + 7 E3^{1,chi3,2} - 8 E3^{1,chi3,4}, 0) = 2 log 2") {
  ClosedFormValue v = lambda_eis_reg({term(Rat(1), "1", "chi3", 1),
                                      term(Rat(7), "1", "chi3", 2),
                                      term(Rat(-8), "1", "chi3", 4)},
                                     12);
  CHECK(v.exact);
  CHECK(v.c_zeta3_over_pi2 == 0);
  CHECK(v.c_log_prime.at(2) == 2);
  CHECK(v.c_one == 0);
}

TEST_CASE("non-removable pole is rejected") {
  CHECK_THROWS_AS(lambda_eis_reg({term(Rat(1), "1", "chi3", 1)}, 6), PoleError);
}

TEST_CASE("exact vs numeric agreement for the paper combinations") {
  std::vector<std::vector<EisTerm>> combos = {
      {term(Rat(1), "chi4", "1", 1)},
      {term(Rat(4), "chi4", "1", 1), term(Rat(-32), "chi4", "1", 2)},
      {term(Rat(1), "1", "chi3", 1), term(Rat(7), "1", "chi3", 2),
       term(Rat(-8), "1", "chi3", 4)},
      {term(Rat(-2), "1", "chi4", 1), term(Rat(2), "1", "chi4", 2)}};
  std::vector<long> levels = {8, 8, 12, 16};
  for (size_t i = 0; i < combos.size(); ++i) {
    ClosedFormValue v = lambda_eis_reg(combos[i], levels[i]);
    long double num = lambda_eis_reg_numeric(combos[i], levels[i]);
    CHECK(std::abs(v.value() - num) < 1e-10L);
  }
}
