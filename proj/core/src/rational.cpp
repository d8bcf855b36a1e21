#include "modmahler/rational.hpp"

#include <mutex>
#include <stdexcept>

namespace mm {

Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rat frac_part(const Rat& x) {
  Rat f = x - Rat(floor_rat(x));
  f.canonicalize();
  return f;
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

const Rat& bernoulli_number(unsigned k) {
  static std::vector<Rat> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= k) {
    unsigned m = cache.size();
    if (m == 0) {
      cache.emplace_back(1);
      continue;
    }
    // B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1, j) B_j
    Rat s = 0;
    for (unsigned j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * cache[j];
    Rat b = -s / Rat(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[k];
}

Rat bernoulli_poly(unsigned k, const Rat& x) {
  // B_k(x) = sum_j C(k,j) B_j x^{k-j}
  Rat acc = 0;
  Rat xp = 1;
  // accumulate from highest power down so we need powers of x incrementally
  std::vector<Rat> pow(k + 1);
  pow[0] = 1;
  for (unsigned i = 1; i <= k; ++i) pow[i] = pow[i - 1] * x;
  for (unsigned j = 0; j <= k; ++j)
    acc += Rat(binomial(k, j)) * bernoulli_number(j) * pow[k - j];
  acc.canonicalize();
  return acc;
}

Rat bernoulli_frac(unsigned k, const Rat& x) {
  return bernoulli_poly(k, frac_part(x));
}

Rat periodic_p1(const Rat& x) {
  if (is_integer(x)) return Rat(0);
  return frac_part(x) - rat(1, 2);
}

Rat mod2(const Rat& r) {
  Rat half = r / 2;
  Rat f = frac_part(half);
  return f * 2;
}

Rat pow_rat(const Rat& x, long e) {
  if (e == 0) return Rat(1);
  bool inv = e < 0;
  unsigned long k = inv ? -(unsigned long)e : (unsigned long)e;
  Rat num, den;
  mpz_pow_ui(num.get_num_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(num.get_den_mpz_t(), x.get_den_mpz_t(), k);
  num.canonicalize();
  if (!inv) return num;
  if (num == 0) throw std::domain_error("pow_rat: division by zero");
  return Rat(1) / num;
}

long double to_ld(const Rat& x) {
  // mpq_get_d loses precision beyond double; split num/den for long double.
  long double n = mpz_get_d(x.get_num_mpz_t());
  long double d = mpz_get_d(x.get_den_mpz_t());
  if (mpz_sizeinbase(x.get_num_mpz_t(), 2) < 52 &&
      mpz_sizeinbase(x.get_den_mpz_t(), 2) < 52)
    return n / d;
  // fall back through a scaled representation for big operands
  mpf_class f(x, 128);
  return static_cast<long double>(f.get_d());
}

std::complex<long double> to_cld(const Rat& x) { return {to_ld(x), 0.0L}; }

long lcm_long(long a, long b) {
  Int l;
  Int ia(a), ib(b);
  mpz_lcm(l.get_mpz_t(), ia.get_mpz_t(), ib.get_mpz_t());
  return l.get_si();
}

}  // namespace mm
