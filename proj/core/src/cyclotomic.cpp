#include "modmahler/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mm {

namespace {

// polynomial helpers on vector<Rat>, index = degree
void poly_trim(std::vector<Rat>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<Rat> poly_div_exact(std::vector<Rat> num, const std::vector<Rat>& den) {
  poly_trim(num);
  std::vector<Rat> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
  while (num.size() >= den.size() && !num.empty()) {
    Rat c = num.back() / den.back();
    size_t shift = num.size() - den.size();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    poly_trim(num);
  }
  if (!num.empty()) throw std::logic_error("poly_div_exact: nonzero remainder");
  return q;
}

struct FieldTable {
  long N = 1;
  long phi = 1;
  std::vector<Rat> modulus;                 // Phi_N, degree phi
  std::vector<std::vector<Rat>> powmod;     // x^m mod Phi_N for 0 <= m < 2*phi
};

const FieldTable& field_table(long N) {
  static std::map<long, FieldTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;

  FieldTable t;
  t.N = N;
  t.modulus = cyclotomic_polynomial(N);
  t.phi = static_cast<long>(t.modulus.size()) - 1;
  long top = std::max<long>(2 * t.phi, N);
  t.powmod.resize(top);
  for (long m = 0; m < top; ++m) {
    if (m < t.phi) {
      std::vector<Rat> e(t.phi, Rat(0));
      e[m] = 1;
      t.powmod[m] = std::move(e);
    } else {
      // x^m = x * x^{m-1} mod Phi
      std::vector<Rat> prev = t.powmod[m - 1];
      std::vector<Rat> cur(t.phi, Rat(0));
      // multiply by x: shift up; the overflowed top term folds via Phi
      Rat topc = prev[t.phi - 1];
      for (long i = t.phi - 1; i >= 1; --i) cur[i] = prev[i - 1];
      cur[0] = 0;
      if (topc != 0) {
        // x^phi = -(Phi - x^phi) since Phi is monic
        for (long i = 0; i < t.phi; ++i) cur[i] -= topc * t.modulus[i];
      }
      t.powmod[m] = std::move(cur);
    }
  }
  return cache.emplace(N, std::move(t)).first->second;
}

std::vector<long> divisors(long n) {
  std::vector<long> d;
  for (long i = 1; i * i <= n; ++i)
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  std::sort(d.begin(), d.end());
  return d;
}

// Solve A y = b exactly; A given column-wise, rows x cols. Returns empty on
// inconsistency, else one solution (system assumed full column rank or
// consistent).
bool solve_exact(std::vector<std::vector<Rat>> cols, std::vector<Rat> b,
                 std::vector<Rat>* out) {
  size_t rows = b.size(), ncols = cols.size();
  // build augmented row-major matrix
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(ncols + 1, Rat(0)));
  for (size_t j = 0; j < ncols; ++j)
    for (size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  for (size_t i = 0; i < rows; ++i) m[i][ncols] = b[i];

  std::vector<long> pivot_col_of_row(rows, -1);
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j <= ncols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j <= ncols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col_of_row[r] = static_cast<long>(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (m[i][ncols] != 0) return false;
  std::vector<Rat> y(ncols, Rat(0));
  for (size_t i = 0; i < r; ++i)
    if (pivot_col_of_row[i] >= 0) y[pivot_col_of_row[i]] = m[i][ncols];
  if (out) *out = std::move(y);
  return true;
}

}  // namespace

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<Rat>& cyclotomic_polynomial(long N) {
  static std::map<long, std::vector<Rat>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto compute = [&](long n, auto&& self) -> const std::vector<Rat>& {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Rat> num(n + 1, Rat(0));
    num[0] = -1;
    num[n] = 1;  // x^n - 1
    std::vector<Rat> acc{Rat(1)};
    for (long d : divisors(n)) {
      if (d == n) continue;
      const std::vector<Rat>& phid = self(d, self);
      std::vector<Rat> prod(acc.size() + phid.size() - 1, Rat(0));
      for (size_t i = 0; i < acc.size(); ++i)
        for (size_t j = 0; j < phid.size(); ++j) prod[i + j] += acc[i] * phid[j];
      acc = std::move(prod);
    }
    std::vector<Rat> q = poly_div_exact(std::move(num), acc);
    return cache.emplace(n, std::move(q)).first->second;
  };
  return compute(N, compute);
}

void Cyclotomic::trim() {
  // nothing: fixed-size representation; kept for future packing
}

Cyclotomic Cyclotomic::root_of_unity(long N, long k) {
  if (N <= 0) throw std::invalid_argument("root_of_unity: N must be positive");
  k %= N;
  if (k < 0) k += N;
  const FieldTable& t = field_table(N);
  Cyclotomic z(N, t.powmod[k]);
  return z;
}

Cyclotomic Cyclotomic::from_power_poly(long N, const std::vector<Rat>& raw) {
  const FieldTable& t = field_table(N);
  std::vector<Rat> c(t.phi, Rat(0));
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == 0) continue;
    long m = static_cast<long>(i % N);
    const std::vector<Rat>& row = t.powmod[m];
    for (long j = 0; j < t.phi; ++j) c[j] += raw[i] * row[j];
  }
  return Cyclotomic(N, std::move(c)).canonical();
}

bool Cyclotomic::is_zero() const {
  for (const Rat& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyclotomic::rational_value() const {
  if (!is_rational()) {
    Cyclotomic c = canonical();
    if (!c.is_rational()) throw std::logic_error("rational_value: not rational");
    return c.c_[0];
  }
  return c_[0];
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (Rat& x : r.c_) x = -x;
  return r;
}

Cyclotomic Cyclotomic::lifted(long M) const {
  if (M == order_) return *this;
  if (M % order_ != 0) throw std::invalid_argument("lifted: order must divide M");
  const FieldTable& t = field_table(M);
  long step = M / order_;
  std::vector<Rat> c(t.phi, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const std::vector<Rat>& row = t.powmod[(static_cast<long>(i) * step) % M];
    for (long j = 0; j < t.phi; ++j) c[j] += c_[i] * row[j];
  }
  return Cyclotomic(M, std::move(c));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (order_ == o.order_) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  long M = lcm_long(order_, o.order_);
  *this = lifted(M);
  Cyclotomic ob = o.lifted(M);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += ob.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  return *this += -o;
}

Cyclotomic& Cyclotomic::operator*=(const Rat& r) {
  for (Rat& x : c_) x *= r;
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (order_ == 1 && o.order_ == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  long M = lcm_long(order_, o.order_);
  Cyclotomic a = lifted(M), b = o.lifted(M);
  const FieldTable& t = field_table(M);
  std::vector<Rat> conv(2 * t.phi - 1, Rat(0));
  for (long i = 0; i < t.phi; ++i) {
    if (a.c_[i] == 0) continue;
    for (long j = 0; j < t.phi; ++j) {
      if (b.c_[j] == 0) continue;
      conv[i + j] += a.c_[i] * b.c_[j];
    }
  }
  std::vector<Rat> c(t.phi, Rat(0));
  for (long m = 0; m < 2 * t.phi - 1; ++m) {
    if (conv[m] == 0) continue;
    if (m < t.phi) {
      c[m] += conv[m];
    } else {
      const std::vector<Rat>& row = t.powmod[m];
      for (long j = 0; j < t.phi; ++j) c[j] += conv[m] * row[j];
    }
  }
  *this = Cyclotomic(M, std::move(c));
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclotomic::inverse of zero");
  if (is_rational()) return Cyclotomic(Rat(1) / c_[0]);
  const FieldTable& t = field_table(order_);
  // columns of multiplication-by-this matrix
  std::vector<std::vector<Rat>> cols(t.phi);
  for (long j = 0; j < t.phi; ++j) {
    Cyclotomic ej(order_, t.powmod[j]);
    Cyclotomic prod = *this;
    prod *= ej;
    prod = prod.lifted(order_);  // same order already
    cols[j] = prod.c_;
  }
  std::vector<Rat> b(t.phi, Rat(0));
  b[0] = 1;
  std::vector<Rat> y;
  if (!solve_exact(std::move(cols), std::move(b), &y))
    throw std::domain_error("Cyclotomic::inverse: singular (zero divisor?)");
  return Cyclotomic(order_, std::move(y));
}

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic acc(Rat(1));
  Cyclotomic base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

Cyclotomic Cyclotomic::galois(long k) const {
  long N = order_;
  k %= N;
  if (k < 0) k += N;
  if (std::gcd(k, N) != 1) throw std::invalid_argument("galois: k not coprime to order");
  const FieldTable& t = field_table(N);
  std::vector<Rat> c(t.phi, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const std::vector<Rat>& row = t.powmod[(static_cast<long>(i) * k) % N];
    for (long j = 0; j < t.phi; ++j) c[j] += c_[i] * row[j];
  }
  return Cyclotomic(N, std::move(c));
}

Cyclotomic Cyclotomic::conj() const {
  if (order_ == 1) return *this;
  return galois(order_ - 1);
}

Cyclotomic Cyclotomic::canonical() const {
  Cyclotomic cur = *this;
  bool descended = true;
  while (descended && cur.order_ > 1) {
    descended = false;
    const FieldTable& t = field_table(cur.order_);
    (void)t;
    std::vector<long> divs = divisors(cur.order_);
    for (long d : divs) {
      if (d == cur.order_) continue;
      long phid = euler_phi(d);
      // candidate basis: lifts of zeta_d^j
      std::vector<std::vector<Rat>> cols(phid);
      for (long j = 0; j < phid; ++j)
        cols[j] = Cyclotomic::root_of_unity(d, j).lifted(cur.order_).c_;
      std::vector<Rat> y;
      if (solve_exact(std::move(cols), cur.c_, &y)) {
        cur = Cyclotomic(d, std::move(y));
        descended = true;
        break;
      }
    }
  }
  return cur;
}

bool Cyclotomic::equals(const Cyclotomic& o) const {
  long M = lcm_long(order_, o.order_);
  Cyclotomic a = lifted(M), b = o.lifted(M);
  for (size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::complex<long double> Cyclotomic::embed() const {
  const long double pi = 3.14159265358979323846264338327950288L;
  std::complex<long double> z = 0;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    long double ang = 2.0L * pi * static_cast<long double>(i) / order_;
    z += to_ld(c_[i]) * std::complex<long double>(std::cos(ang), std::sin(ang));
  }
  return z;
}

std::string Cyclotomic::str() const {
  Cyclotomic c = canonical();
  if (c.is_rational()) return c.c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c.c_.size(); ++i) {
    if (c.c_[i] == 0) continue;
    Rat v = c.c_[i];
    if (!first) os << (v > 0 ? " + " : " - ");
    else if (v < 0) os << "-";
    Rat av = abs(v);
    first = false;
    if (i == 0) {
      os << av.get_str();
    } else {
      if (av != 1) os << av.get_str() << "*";
      os << "zeta" << c.order_;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) return "0";
  return os.str();
}

Cyclotomic phase_to_cyclotomic(const Rat& r) {
  Rat m = mod2(r);  // in [0,2)
  long den = static_cast<long>(m.get_den().get_si());
  long num = static_cast<long>(m.get_num().get_si());
  // exp(i pi num/den) = zeta_{2 den}^{num}
  return Cyclotomic::root_of_unity(2 * den, num).canonical();
}

Cyclotomic parse_cyclotomic(const std::string& text) {
  // grammar: factor ('*' factor)*, factor = rational | 'i' | 'zeta<N>' ['^' int],
  // optional leading '-'
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty cyclotomic literal");
  Cyclotomic acc(Rat(1));
  size_t pos = 0;
  if (s[0] == '-') {
    acc *= Rat(-1);
    pos = 1;
  } else if (s[0] == '+') {
    pos = 1;
  }
  bool expect_factor = true;
  while (pos < s.size()) {
    if (!expect_factor) {
      if (s[pos] != '*') throw std::invalid_argument("bad cyclotomic literal: " + text);
      ++pos;
      expect_factor = true;
      continue;
    }
    if (s.compare(pos, 4, "zeta") == 0) {
      pos += 4;
      size_t q = pos;
      while (q < s.size() && isdigit(static_cast<unsigned char>(s[q]))) ++q;
      long N = std::stol(s.substr(pos, q - pos));
      pos = q;
      long k = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        size_t r = pos;
        if (r < s.size() && (s[r] == '-' || s[r] == '+')) ++r;
        while (r < s.size() && isdigit(static_cast<unsigned char>(s[r]))) ++r;
        k = std::stol(s.substr(pos, r - pos));
        pos = r;
      }
      acc *= Cyclotomic::root_of_unity(N, k);
    } else if (s[pos] == 'i') {
      ++pos;
      acc *= Cyclotomic::root_of_unity(4, 1);
    } else {
      size_t q = pos;
      if (q < s.size() && (s[q] == '-' || s[q] == '+')) ++q;
      while (q < s.size() && (isdigit(static_cast<unsigned char>(s[q])) || s[q] == '/')) ++q;
      if (q == pos) throw std::invalid_argument("bad cyclotomic literal: " + text);
      acc *= rat_from_string(s.substr(pos, q - pos));
      pos = q;
    }
    expect_factor = false;
  }
  return acc.canonical();
}

}  // namespace mm
