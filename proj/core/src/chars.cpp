#include "modmahler/chars.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace mm {

namespace {

long mod_pow(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

long multiplicative_order(long g, long m) {
  long x = g % m, o = 1;
  while (x != 1 % m) {
    x = (x * g) % m;
    ++o;
    if (o > m) throw std::logic_error("order loop");
  }
  return o;
}

struct UnitGroup {
  long m;
  std::vector<long> gens;
  std::vector<long> ords;
};

// generators of (Z/m)^* via CRT over prime powers
UnitGroup unit_group(long m) {
  UnitGroup ug;
  ug.m = m;
  if (m == 1) return ug;
  // factor
  std::vector<std::pair<long, long>> pp;  // (p^e, p)
  long t = m;
  for (long p = 2; p * p <= t; ++p) {
    if (t % p == 0) {
      long q = 1;
      while (t % p == 0) {
        t /= p;
        q *= p;
      }
      pp.push_back({q, p});
    }
  }
  if (t > 1) pp.push_back({t, t});

  auto crt_lift = [&](long r, long q) {
    // value ≡ r mod q, ≡ 1 mod m/q
    long other = m / q;
    for (long x = r % q; x < m; x += q)
      if (x % other == 1 % other) return x;
    throw std::logic_error("crt_lift failed");
  };

  for (auto [q, p] : pp) {
    if (p == 2) {
      if (q == 2) continue;
      if (q == 4) {
        ug.gens.push_back(crt_lift(3, q));
        ug.ords.push_back(2);
      } else {
        ug.gens.push_back(crt_lift(q - 1, q));
        ug.ords.push_back(2);
        ug.gens.push_back(crt_lift(5, q));
        ug.ords.push_back(q / 4);
      }
    } else {
      // primitive root search mod q
      long phi_q = q - q / p;
      long g = 0;
      for (long c = 2; c < q; ++c) {
        if (std::gcd(c, q) != 1) continue;
        if (multiplicative_order(c, q) == phi_q) {
          g = c;
          break;
        }
      }
      ug.gens.push_back(crt_lift(g, q));
      ug.ords.push_back(phi_q);
    }
  }
  return ug;
}

}  // namespace

DirichletChar::DirichletChar() : zpow_(1, 0), name_("1") {}

void DirichletChar::finalize(long index) {
  // reduce zeta powers to the character's own order
  long L0 = order_;  // provisional: lcm of generator orders, set by caller
  long g = L0;
  for (long n = 0; n < modulus_; ++n)
    if (zpow_[n] > 0) g = std::gcd(g, zpow_[n]);
  if (g == 0) g = L0;
  order_ = L0 / g;
  for (long n = 0; n < modulus_; ++n)
    if (zpow_[n] >= 0) zpow_[n] = (zpow_[n] / g) % std::max<long>(order_, 1);
  if (order_ == 0) order_ = 1;

  // conductor: smallest f | m with chi trivial on units ≡ 1 mod f
  conductor_ = modulus_;
  for (long f = 1; f <= modulus_; ++f) {
    if (modulus_ % f != 0) continue;
    bool ok = true;
    for (long a = 0; a < modulus_ && ok; ++a) {
      if (zpow_[a] < 0) continue;
      if (a % f == 1 % f && zpow_[a] != 0) ok = false;
    }
    if (ok) {
      conductor_ = f;
      break;
    }
  }
  parity_ = (modulus_ == 1) ? 1 : (zpow_[modulus_ - 1] == 0 ? 1 : -1);

  if (modulus_ == 1) {
    name_ = "1";
  } else {
    name_ = "chi" + std::to_string(modulus_) + "." + std::to_string(index);
  }
}

std::vector<DirichletChar> enumerate_chars(long m) {
  std::vector<DirichletChar> out;
  if (m == 1) {
    out.emplace_back();
    return out;
  }
  UnitGroup ug = unit_group(m);
  long L0 = 1;
  for (long o : ug.ords) L0 = lcm_long(L0, o);

  // enumerate exponent tuples
  size_t ng = ug.gens.size();
  std::vector<long> k(ng, 0);
  // precompute group elements as products of generator powers
  long count = 1;
  for (long o : ug.ords) count *= o;
  long index = 0;
  while (true) {
    DirichletChar ch;
    ch.modulus_ = m;
    ch.order_ = L0;
    ch.zpow_.assign(m, -1);
    // walk the whole group
    std::vector<long> e(ng, 0);
    while (true) {
      long n = 1 % m;
      long zp = 0;
      for (size_t i = 0; i < ng; ++i) {
        n = (n * mod_pow(ug.gens[i], e[i], m)) % m;
        zp = (zp + k[i] * e[i] % L0 * (L0 / ug.ords[i])) % L0;
      }
      ch.zpow_[n] = zp;
      // increment e
      size_t i = 0;
      for (; i < ng; ++i) {
        if (++e[i] < ug.ords[i]) break;
        e[i] = 0;
      }
      if (i == ng) break;
      if (ng == 0) break;
    }
    if (ng == 0) ch.zpow_[1 % m] = 0;
    ch.finalize(index++);
    out.push_back(std::move(ch));
    // increment k
    size_t i = 0;
    for (; i < ng; ++i) {
      if (++k[i] < ug.ords[i]) break;
      k[i] = 0;
    }
    if (i == ng || ng == 0) break;
  }
  return out;
}

bool DirichletChar::is_zero_at(long n) const {
  long r = n % modulus_;
  if (r < 0) r += modulus_;
  return zpow_[r] < 0;
}

long DirichletChar::zeta_power(long n) const {
  long r = n % modulus_;
  if (r < 0) r += modulus_;
  return zpow_[r];
}

Cyclotomic DirichletChar::value(long n) const {
  long r = n % modulus_;
  if (r < 0) r += modulus_;
  if (zpow_[r] < 0) return Cyclotomic();
  if (order_ == 1) return Cyclotomic(Rat(1));
  return Cyclotomic::root_of_unity(order_, zpow_[r]);
}

DirichletChar DirichletChar::conjugate() const {
  DirichletChar c = *this;
  for (long n = 0; n < modulus_; ++n)
    if (c.zpow_[n] > 0) c.zpow_[n] = order_ - c.zpow_[n];
  // return the enumerated instance so names and metadata stay canonical
  for (auto& e : all(modulus_))
    if (e.zpow_ == c.zpow_) return e;
  return c;
}

bool DirichletChar::same_character(const DirichletChar& o) const {
  return modulus_ == o.modulus_ && zpow_ == o.zpow_;
}

std::vector<DirichletChar> DirichletChar::all(long modulus) {
  static std::map<long, std::vector<DirichletChar>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(modulus);
  if (it == cache.end()) it = cache.emplace(modulus, enumerate_chars(modulus)).first;
  return it->second;
}

std::vector<DirichletChar> DirichletChar::primitive(long modulus) {
  std::vector<DirichletChar> out;
  for (auto& c : all(modulus))
    if (c.primitive()) out.push_back(c);
  return out;
}

DirichletChar DirichletChar::primitive_part() const {
  if (primitive()) return *this;
  for (auto& c : all(conductor_)) {
    if (!c.primitive()) continue;
    bool ok = true;
    for (long n = 0; n < modulus_ && ok; ++n) {
      if (zpow_[n] < 0) continue;
      Cyclotomic v = c.value(n);
      if (!(v == value(n))) ok = false;
    }
    if (ok) return c;
  }
  throw std::logic_error("primitive_part: not found");
}

DirichletChar DirichletChar::induced(long modulus) const {
  if (modulus % conductor_ != 0)
    throw std::invalid_argument("induced: conductor must divide modulus");
  for (auto& c : all(modulus)) {
    if (c.conductor() != conductor_) continue;
    bool ok = true;
    for (long n = 0; n < modulus && ok; ++n) {
      if (c.zpow_[n] < 0) continue;
      if (!(c.value(n) == value(n))) ok = false;
    }
    if (ok) return c;
  }
  throw std::logic_error("induced: not found");
}

DirichletChar DirichletChar::by_name(const std::string& name) {
  if (name == "1" || name == "triv") return DirichletChar();
  auto find_quadratic = [&](long m, int parity) -> DirichletChar {
    for (auto& c : primitive(m))
      if (c.order() == 2 && c.parity() == parity) return c;
    throw std::invalid_argument("no such quadratic character mod " + std::to_string(m));
  };
  if (name == "chi3") return find_quadratic(3, -1);
  if (name == "chi4") return find_quadratic(4, -1);
  if (name == "chi8") return find_quadratic(8, 1);
  if (name == "chi8o") return find_quadratic(8, -1);
  auto dot = name.find('.');
  if (name.rfind("chi", 0) == 0 && dot != std::string::npos) {
    long m = std::stol(name.substr(3, dot - 3));
    long idx = std::stol(name.substr(dot + 1));
    for (auto& c : all(m))
      if (c.name() == name) return c;
    (void)idx;
  }
  throw std::invalid_argument("unknown character name: " + name);
}

Cyclotomic generalized_bernoulli(const DirichletChar& chi, unsigned k) {
  long m = chi.modulus();
  Cyclotomic acc;
  for (long a = 1; a <= m; ++a) {
    if (chi.is_zero_at(a)) continue;
    acc += chi.value(a) * bernoulli_poly(k, rat(a, m));
  }
  Rat scale = pow_rat(Rat(m), static_cast<long>(k) - 1);
  acc *= scale;
  return acc.canonical();
}

Cyclotomic dirichlet_L_nonpositive(const DirichletChar& chi, unsigned k) {
  Cyclotomic b = generalized_bernoulli(chi, k);
  b *= rat(-1, static_cast<long>(k));
  return b.canonical();
}

}  // namespace mm
