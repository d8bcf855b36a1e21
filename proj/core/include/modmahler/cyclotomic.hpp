// Exact arithmetic in cyclotomic fields Q(zeta_N), power-basis representation
// reduced modulo the N-th cyclotomic polynomial.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "modmahler/rational.hpp"

namespace mm {

class Cyclotomic {
 public:
  Cyclotomic() : order_(1), c_(1, Rat(0)) {}
  Cyclotomic(const Rat& r) : order_(1), c_(1, r) {}
  Cyclotomic(long n) : order_(1), c_(1, Rat(n)) {}

  // zeta_N^k
  static Cyclotomic root_of_unity(long N, long k);
  // Reduce a raw polynomial sum c[i] * zeta_N^i (any length) to canonical form.
  static Cyclotomic from_power_poly(long N, const std::vector<Rat>& raw);

  long order() const { return order_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  Cyclotomic& operator*=(const Rat& r);
  friend Cyclotomic operator*(Cyclotomic a, const Rat& r) { return a *= r; }
  friend Cyclotomic operator*(const Rat& r, Cyclotomic a) { return a *= r; }

  Cyclotomic inverse() const;  // field inverse; throws on zero
  Cyclotomic pow(long e) const;
  Cyclotomic conj() const;             // complex conjugation zeta -> zeta^-1
  Cyclotomic galois(long k) const;     // zeta -> zeta^k, gcd(k, order)=1

  // Representative of the same element in Q(zeta_M); order must divide M.
  Cyclotomic lifted(long M) const;
  // Minimal-order representative (descent through divisors).
  Cyclotomic canonical() const;

  bool equals(const Cyclotomic& o) const;
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.equals(b); }

  std::complex<long double> embed() const;  // zeta_N -> exp(2 pi i / N)
  std::string str() const;

 private:
  Cyclotomic(long N, std::vector<Rat> c) : order_(N), c_(std::move(c)) {}
  void trim();

  long order_;
  std::vector<Rat> c_;  // size phi(order_), power basis 1, z, ..., z^{phi-1}
};

long euler_phi(long n);
// Coefficients of the N-th cyclotomic polynomial (degree phi(N), monic).
const std::vector<Rat>& cyclotomic_polynomial(long N);

// exp(i pi r) for exact rational r, as an exact root of unity.
Cyclotomic phase_to_cyclotomic(const Rat& r);

// Small literal parser: rationals, "i", "zetaN^k", products/powers thereof,
// e.g. "-zeta8^2", "1/2*zeta3", "-i".
Cyclotomic parse_cyclotomic(const std::string& text);

}  // namespace mm
