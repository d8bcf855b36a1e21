#include <doctest.h>

#include <random>

#include "modmahler/symb.hpp"

using namespace mm;

namespace {
TorsionDivisor div_of(long N, std::initializer_list<std::pair<Pt, long>> pts) {
  TorsionDivisor d;
  d.N = N;
  for (auto& [p, c] : pts) d.add(p, Rat(c));
  return d;
}

TorsionDivisor random_deg0(std::mt19937& rng, long N) {
  std::uniform_int_distribution<long> pick(0, N - 1), coef(-3, 3);
  TorsionDivisor d;
  d.N = N;
  for (int i = 0; i < 5; ++i) d.add({pick(rng), pick(rng)}, Rat(coef(rng)));
  d.add({0, 0}, -d.degree());
  return d;
}
}  // namespace

TEST_CASE("mu product: identity and the section-5 example") {
  long N = 8;
  TorsionDivisor delta0 = div_of(N, {{{0, 0}, 1}});
  TorsionDivisor d = div_of(N, {{{0, 0}, -1}, {{0, 2}, 1}, {{0, 4}, 1}, {{0, 6}, -1}});
  CHECK(mu_product(delta0, d).pts == d.pts);

  TorsionDivisor sq = mu_product(d, d);
  TorsionDivisor expect = div_of(N, {{{0, 2}, -4}, {{0, 6}, 4}});
  CHECK(sq.pts == expect.pts);
}

TEST_CASE("mu associativity on random triples") {
  std::mt19937 rng(5);
  for (int it = 0; it < 10; ++it) {
    TorsionDivisor a = random_deg0(rng, 6), b = random_deg0(rng, 6),
                   c = random_deg0(rng, 6);
    auto l = mu_product(mu_product(a, b), c);
    auto r = mu_product(a, mu_product(b, c));
    CHECK(l.pts == r.pts);
  }
}

TEST_CASE("Pi_epsilon is idempotent and lands in the eigenspace") {
  std::mt19937 rng(17);
  long N = 4;
  TensorCombo x = tensor(random_deg0(rng, N), random_deg0(rng, N));
  TensorCombo p1 = pi_epsilon(x);
  TensorCombo p2 = pi_epsilon(p1);
  CHECK(p1.terms == p2.terms);

  // eigenspace property for generators of H: translation by a acts trivially,
  // the involution acts by -1 -- check via the defining action on tensors
  TensorCombo translated;
  translated.N = N;
  long a1 = 1, a2 = 3;
  for (auto& [uv, c] : p1.terms)
    translated.add({uv.first.first + a1, uv.first.second + a2},
                   {uv.second.first - a1, uv.second.second - a2}, c);
  CHECK(translated.terms == p1.terms);
  // (-1) . x = -x on the eigenspace, i.e. the tensor is swap-symmetric
  bool symmetric = true;
  for (auto& [uv, c] : p1.terms) {
    auto it = p1.terms.find({uv.second, uv.first});
    if (it == p1.terms.end() || !(it->second == c)) symmetric = false;
  }
  CHECK(symmetric);
}

TEST_CASE("mu/theta inverse pair (Lemma mu iso) for N in {4, 6, 8}") {
  std::mt19937 rng(23);
  for (long N : {4L, 6L, 8L}) {
    Rat n2(N * N);
    for (int it = 0; it < 3; ++it) {
      // mu(theta(d)) = N^2 d on degree-0 divisors
      TorsionDivisor d = random_deg0(rng, N);
      TorsionDivisor md = mu_of_tensor(theta_map(d));
      TorsionDivisor scaled;
      scaled.N = N;
      for (auto& [p, c] : d.pts) scaled.add(p, c * n2);
      CHECK(md.pts == scaled.pts);

      // theta(mu(x)) = N^2 x on epsilon-eigenvectors x of degree-0 tensors
      TensorCombo x = pi_epsilon(tensor(random_deg0(rng, N), random_deg0(rng, N)));
      TensorCombo tm = theta_map(mu_of_tensor(x));
      TensorCombo xs;
      xs.N = N;
      for (auto& [uv, c] : x.terms) xs.add(uv.first, uv.second, c * n2);
      CHECK(tm.terms == xs.terms);
    }
  }
}

TEST_CASE("horospherical map: linearity, brute-force value, surjectivity rank") {
  long N = 8;
  TorsionDivisor zero;
  zero.N = N;
  HoroFunction f0 = horospherical(1, zero);
  for (auto& v : f0.values) CHECK(v == 0);

  // lambda^1([u]-[0]) at g = identity, u = (0,2): direct double sum over x
  TorsionDivisor d = div_of(N, {{{0, 2}, 1}, {{0, 0}, -1}});
  HoroFunction f = horospherical(1, d);
  // phi(g^{-1} x) at g = I picks x = u and x = 0:
  // B3({2/8}) - B3(0) = B3(1/4) = 3/64 - 3/32 + ... computed exactly:
  Rat expect = bernoulli_poly(3, rat(1, 4)) - bernoulli_poly(3, Rat(0));
  CHECK(f.value_at(Mat2{}) == expect);
  CHECK(expect == rat(3, 64));

  // sign: f(-g) = -f(g)
  Mat2 g{1, 2, 1, 3};
  CHECK(f.value_at(g.neg()) == -f.value_at(g));

  // lambda^1 surjects onto V_4^-: rank equals dim (= number of cusps of X(4))
  CHECK(dim_v_minus(4) == 6);
  CHECK(horospherical_image_rank(1, 4) == 6);
}

TEST_CASE("milnor_to_eis: the three worked cases") {
  // Gamma_1(8): div(pi* iota* X) = div(pi* Y)
  TorsionDivisor dIX =
      div_of(8, {{{0, 0}, -1}, {{0, 2}, 1}, {{0, 4}, 1}, {{0, 6}, -1}});
  EisCombo c8 = milnor_to_eis(dIX, dIX);
  REQUIRE(c8.coeff.size() == 1);
  CHECK(c8.sign_ambiguous);
  Rat v = c8.coeff.at({0, 2});
  CHECK((v == rat(64, 3) || v == rat(-64, 3)));

  // Q case: dv(iota* x) = 2(0,0) - 2(0,4), dv(y) = 2(0,2) - 2(0,6)
  TorsionDivisor dx = div_of(8, {{{0, 0}, 2}, {{0, 4}, -2}});
  TorsionDivisor dy = div_of(8, {{{0, 2}, 2}, {{0, 6}, -2}});
  EisCombo cq = milnor_to_eis(dx, dy);
  REQUIRE(cq.coeff.size() == 1);
  Rat vq = cq.coeff.at({0, 2});
  CHECK((vq == rat(128, 3) || vq == rat(-128, 3)));
  // exotic relation: twice the P2 coefficient
  CHECK(abs(vq) == 2 * abs(v));

  // E_1(6) case -> ±12 (Eis^1(0,1) + Eis^1(0,2))
  TorsionDivisor d6x =
      div_of(6, {{{0, 0}, 1}, {{0, 1}, 1}, {{0, 3}, -1}, {{0, 4}, -1}});
  EisCombo c6 = milnor_to_eis(d6x, d6x);
  REQUIRE(c6.coeff.size() == 2);
  Rat a = c6.coeff.at({0, 1}), b = c6.coeff.at({0, 2});
  CHECK(a == b);
  CHECK((a == 12 || a == -12));
}

TEST_CASE("milnor_to_eis is invariant under simultaneous translation") {
  // translating both surface functions by the same torsion point shifts the
  // stored divisors oppositely; the output combination is unchanged
  std::mt19937 rng(31);
  TorsionDivisor dIX =
      div_of(8, {{{0, 0}, -1}, {{0, 2}, 1}, {{0, 4}, 1}, {{0, 6}, -1}});
  EisCombo base = milnor_to_eis(dIX, dIX);
  std::uniform_int_distribution<long> pick(0, 7);
  for (int it = 0; it < 6; ++it) {
    Pt a{pick(rng), pick(rng)};
    EisCombo shifted = milnor_to_eis(dIX.translated(a),
                                     dIX.translated({-a.first, -a.second}));
    CHECK(shifted.coeff == base.coeff);
  }
}

TEST_CASE("unit_to_eis0: the worked displays") {
  // pi* Z = 8 (Eis^0(0,3) - Eis^0(0,1)) at N = 8
  auto z = unit_to_eis0(UnitProduct::parse("-i * g(0,3)^2 * g(0,1)^-2 @ 8"));
  CHECK(z.combo.coeff.at({0, 3}) == 8);
  CHECK(z.combo.coeff.at({0, 1}) == -8);
  CHECK(z.combo.coeff.size() == 2);

  // 4t = 24 Eis^0(0,2) + 8 Eis^0(0,4) - 16 Eis^0(0,1) - 16 Eis^0(0,3)
  auto t4 = unit_to_eis0(
      UnitProduct::parse("i * g(0,2)^6 * g(0,4)^2 * g(0,1)^-4 * g(0,3)^-4 @ 8"));
  CHECK(t4.combo.coeff.at({0, 2}) == 24);
  CHECK(t4.combo.coeff.at({0, 4}) == 8);
  CHECK(t4.combo.coeff.at({0, 1}) == -16);
  CHECK(t4.combo.coeff.at({0, 3}) == -16);

  // t = 3 Eis^0((3,0)+(3,1)-(3,2)-(3,3)) at N = 6
  auto t6 = unit_to_eis0(
      UnitProduct::parse("g(3,0) * g(3,1) * g(3,2)^-1 * g(3,3)^-1 @ 6"));
  CHECK(t6.combo.coeff.at({3, 0}) == 3);
  CHECK(t6.combo.coeff.at({3, 1}) == 3);
  CHECK(t6.combo.coeff.at({3, 2}) == -3);
  CHECK(t6.combo.coeff.at({3, 3}) == -3);
}
