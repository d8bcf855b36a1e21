#include "modmahler/symb.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace mm {

namespace {
long norm_mod(long x, long N) { return ((x % N) + N) % N; }
Pt norm_pt(Pt p, long N) { return {norm_mod(p.first, N), norm_mod(p.second, N)}; }
Pt neg_pt(Pt p, long N) { return {norm_mod(-p.first, N), norm_mod(-p.second, N)}; }
}  // namespace

void TorsionDivisor::add(Pt p, const Rat& c) {
  if (c == 0) return;
  p = norm_pt(p, N);
  auto it = pts.find(p);
  if (it == pts.end())
    pts[p] = c;
  else {
    it->second += c;
    if (it->second == 0) pts.erase(it);
  }
}

Rat TorsionDivisor::degree() const {
  Rat d = 0;
  for (auto& [p, c] : pts) d += c;
  return d;
}

TorsionDivisor TorsionDivisor::translated(Pt a) const {
  TorsionDivisor r;
  r.N = N;
  for (auto& [p, c] : pts) r.add({p.first + a.first, p.second + a.second}, c);
  return r;
}

TorsionDivisor TorsionDivisor::negated_points() const {
  TorsionDivisor r;
  r.N = N;
  for (auto& [p, c] : pts) r.add(neg_pt(p, N), c);
  return r;
}

std::string TorsionDivisor::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [p, c] : pts) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*(" << p.first << "," << p.second << ")";
  }
  if (first) os << "0";
  return os.str();
}

TorsionDivisor mu_product(const TorsionDivisor& d1, const TorsionDivisor& d2) {
  if (d1.N != d2.N) throw std::invalid_argument("mu_product: level mismatch");
  TorsionDivisor r;
  r.N = d1.N;
  for (auto& [p, cp] : d1.pts)
    for (auto& [q, cq] : d2.pts)
      r.add({p.first + q.first, p.second + q.second}, cp * cq);
  return r;
}

void TensorCombo::add(const Pt& u, const Pt& v, const Rat& c) {
  if (c == 0) return;
  auto key = std::make_pair(norm_pt(u, N), norm_pt(v, N));
  auto it = terms.find(key);
  if (it == terms.end())
    terms[key] = c;
  else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

TensorCombo tensor(const TorsionDivisor& d0, const TorsionDivisor& d1) {
  if (d0.N != d1.N) throw std::invalid_argument("tensor: level mismatch");
  TensorCombo t;
  t.N = d0.N;
  for (auto& [u, cu] : d0.pts)
    for (auto& [v, cv] : d1.pts) t.add(u, v, cu * cv);
  return t;
}

TensorCombo pi_epsilon(const TensorCombo& x) {
  long N = x.N;
  TensorCombo r;
  r.N = N;
  Rat w(1, 2 * N * N);
  for (auto& [uv, c] : x.terms) {
    const Pt& u = uv.first;
    const Pt& v = uv.second;
    for (long a1 = 0; a1 < N; ++a1)
      for (long a2 = 0; a2 < N; ++a2) {
        // a . (e_u (x) e_v) = e_{u+a} (x) e_{v-a}
        r.add({u.first + a1, u.second + a2}, {v.first - a1, v.second - a2}, c * w);
        // (a, -1): extra minus times swap-minus = +swap translated
        r.add({v.first + a1, v.second + a2}, {u.first - a1, u.second - a2}, c * w);
      }
  }
  return r;
}

TensorCombo theta_map(const TorsionDivisor& d) {
  long N = d.N;
  TorsionDivisor d0;
  d0.N = N;
  d0.add({0, 0}, Rat(N * N));
  for (long x = 0; x < N; ++x)
    for (long y = 0; y < N; ++y) d0.add({x, y}, Rat(-1));
  return pi_epsilon(tensor(d, d0));
}

TorsionDivisor mu_of_tensor(const TensorCombo& x) {
  TorsionDivisor r;
  r.N = x.N;
  for (auto& [uv, c] : x.terms)
    r.add({uv.first.first + uv.second.first, uv.first.second + uv.second.second}, c);
  return r;
}

Mat2 invert_mod(const Mat2& g, long N) {
  long det = norm_mod(g.a * g.d - g.b * g.c, N);
  long inv = -1;
  for (long x = 1; x < N; ++x)
    if (norm_mod(det * x, N) == 1) {
      inv = x;
      break;
    }
  if (N == 1) inv = 0;
  if (inv < 0) throw std::invalid_argument("invert_mod: determinant not a unit");
  Mat2 r{g.d * inv, -g.b * inv, -g.c * inv, g.a * inv};
  return r.mod(N);
}

CosetTable::CosetTable(long N) : n_(N) {
  // enumerate GL2(Z/N), partition into {±(* *; 0 1)} \ G cosets; remember
  // for every element whether it sits in +B rep or -B rep (the sign flag
  // that V_N^- functions pick up)
  std::vector<long> units;
  for (long u = 0; u < N; ++u)
    if (std::gcd(u, N) == 1 || N == 1) units.push_back(u % std::max(N, 1L));
  for (long a = 0; a < N; ++a)
    for (long b = 0; b < N; ++b)
      for (long c = 0; c < N; ++c)
        for (long d = 0; d < N; ++d) {
          long det = norm_mod(a * d - b * c, N);
          if (N > 1 && std::gcd(det, N) != 1) continue;
          std::array<long, 4> key{a, b, c, d};
          if (coset_id_.count(key)) continue;
          long id = static_cast<long>(reps_.size());
          Mat2 g{a, b, c, d};
          reps_.push_back(g);
          self_negative_.push_back(false);
          for (long u : units)
            for (long x = 0; x < N; ++x)
              for (int s : {1, -1}) {
                Mat2 h{u, x, 0, 1};
                Mat2 m = (h * g).mod(N);
                if (s < 0) m = m.neg().mod(N);
                std::array<long, 4> k2{m.a, m.b, m.c, m.d};
                auto it = coset_sign_.find(k2);
                if (it != coset_sign_.end() && it->second != s)
                  self_negative_[id] = true;
                coset_id_[k2] = id;
                coset_sign_[k2] = s;
              }
        }
}

int CosetTable::sign_of(const Mat2& g) const {
  Mat2 m = g.mod(n_);
  auto it = coset_sign_.find({m.a, m.b, m.c, m.d});
  if (it == coset_sign_.end()) throw std::invalid_argument("sign_of: matrix not invertible mod N");
  return it->second;
}

bool CosetTable::coset_self_negative(long id) const { return self_negative_[id]; }

long CosetTable::coset_of(const Mat2& g) const {
  Mat2 m = g.mod(n_);
  auto it = coset_id_.find({m.a, m.b, m.c, m.d});
  if (it == coset_id_.end()) throw std::invalid_argument("coset_of: matrix not invertible mod N");
  return it->second;
}

std::shared_ptr<const CosetTable> CosetTable::get(long N) {
  static std::map<long, std::shared_ptr<const CosetTable>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it == cache.end())
    it = cache.emplace(N, std::make_shared<CosetTable>(N)).first;
  return it->second;
}

Rat HoroFunction::value_at(const Mat2& g) const {
  Rat v = values[table->coset_of(g)];
  if (sign < 0 && table->sign_of(g) < 0) return -v;
  return v;
}

HoroFunction horospherical(int k, const TorsionDivisor& d) {
  long N = d.N;
  auto table = CosetTable::get(N);
  HoroFunction f;
  f.N = N;
  f.sign = (k % 2 == 0) ? 1 : -1;
  f.table = table;
  f.values.resize(table->coset_count());
  for (size_t i = 0; i < table->coset_count(); ++i) {
    const Mat2& g = table->reps()[i];
    Rat acc = 0;
    for (auto& [p, c] : d.pts) {
      // phi(g^{-1} x) is supported at x = g p (column action); only the
      // second coordinate of x enters
      long x2 = norm_mod(g.c * p.first + g.d * p.second, N);
      acc += c * bernoulli_frac(static_cast<unsigned>(k) + 2, rat(x2, N));
    }
    f.values[i] = acc;
  }
  return f;
}

long dim_v_minus(long N) {
  // V_N^- has one free value per {±B}-coset unless -g lands in +B g, which
  // forces the value to vanish there (never happens: -1 is not of the shape
  // (* *; 0 1), but the table keeps the general check)
  auto table = CosetTable::get(N);
  long dim = 0;
  for (size_t i = 0; i < table->coset_count(); ++i)
    if (!table->coset_self_negative(static_cast<long>(i))) ++dim;
  return dim;
}

long horospherical_image_rank(int k, long N) {
  auto table = CosetTable::get(N);
  std::vector<std::vector<Rat>> rows;
  for (long x = 0; x < N; ++x)
    for (long y = 0; y < N; ++y) {
      TorsionDivisor d;
      d.N = N;
      d.add({x, y}, Rat(1));
      HoroFunction f = horospherical(k, d);
      rows.push_back(f.values);
    }
  // Gaussian elimination rank
  size_t cols = table->coset_count();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
    size_t sel = rank;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      Rat f = rows[i][c] / rows[rank][c];
      for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return static_cast<long>(rank);
}

void EisCombo::add(Pt u, const Rat& c) {
  if (c == 0) return;
  u = norm_pt(u, N);
  Pt nu = neg_pt(u, N);
  if (weight % 2 == 1 && u == nu) return;    // Eis^odd(2-torsion) = 0
  if (weight >= 1 && u == Pt{0, 0}) return;  // Eis^k(0,0) = 0 for k >= 1
  Rat eff = c;
  if (nu < u) {
    u = nu;
    if (weight % 2 == 1) eff = -eff;
  }
  auto it = coeff.find(u);
  if (it == coeff.end())
    coeff[u] = eff;
  else {
    it->second += eff;
    if (it->second == 0) coeff.erase(it);
  }
}

std::string EisCombo::str() const {
  std::ostringstream os;
  if (sign_ambiguous) os << "±";
  bool first = true;
  for (auto& [u, c] : coeff) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*Eis^" << weight << "(" << u.first << "," << u.second << ")";
  }
  if (first) os << "0";
  return os.str();
}

EisCombo milnor_to_eis(const TorsionDivisor& div_iota_x, const TorsionDivisor& div_y) {
  if (div_iota_x.N != div_y.N) throw std::invalid_argument("milnor_to_eis: level mismatch");
  if (div_iota_x.degree() != 0 || div_y.degree() != 0)
    throw std::invalid_argument("milnor_to_eis: divisors must have degree 0");
  long N = div_iota_x.N;
  TorsionDivisor conv = mu_product(div_iota_x, div_y);
  EisCombo combo;
  combo.weight = 1;
  combo.N = N;
  combo.sign_ambiguous = true;
  for (auto& [u, c] : conv.pts) combo.add(u, rat(N, 3) * c);
  return combo;
}

Eis0FromUnit unit_to_eis0(const UnitProduct& f) {
  Eis0FromUnit out;
  out.combo.weight = 0;
  out.combo.N = f.N;
  out.prefactor = f.prefactor;
  for (auto& [idx, c] : f.factors)
    out.combo.add({idx.a, idx.b}, rat(f.N, 2) * Rat(c));
  return out;
}

}  // namespace mm
