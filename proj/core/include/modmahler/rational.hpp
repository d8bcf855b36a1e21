// Exact rational helpers on top of GMP: Bernoulli numbers/polynomials and
// the P1 sawtooth convention used throughout the symbol machinery.
#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace mm {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long n, long d = 1) { Rat r(n, d); r.canonicalize(); return r; }

Rat rat_from_string(const std::string& s);

// x - floor(x), in [0,1).
Rat frac_part(const Rat& x);

bool is_integer(const Rat& x);

// floor of a rational
Int floor_rat(const Rat& x);

Int binomial(unsigned long n, unsigned long k);

// Bernoulli number B_k (B_1 = -1/2 convention).
const Rat& bernoulli_number(unsigned k);

// Bernoulli polynomial B_k(x).
Rat bernoulli_poly(unsigned k, const Rat& x);

// B_k({x}): Bernoulli polynomial at the fractional part.
Rat bernoulli_frac(unsigned k, const Rat& x);

// P1(x) = B_1({x}) = {x} - 1/2 for non-integers, 0 for integers.
Rat periodic_p1(const Rat& x);

// r reduced into [0, 2) modulo 2 (phases are exact rationals r with
// phase = exp(i pi r)).
Rat mod2(const Rat& r);

Rat pow_rat(const Rat& x, long e);

long double to_ld(const Rat& x);
std::complex<long double> to_cld(const Rat& x);

long lcm_long(long a, long b);

}  // namespace mm
