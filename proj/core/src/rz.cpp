#include "modmahler/rz.hpp"

#include <algorithm>
#include <sstream>

namespace mm {

namespace {

long norm_mod(long x, long N) { return ((x % N) + N) % N; }

// canonical representative of (x,y) under (x,y) ~ (-x,-y); *sign multiplied
// by (-1)^k when the flip is taken
GIdx canonical_gidx(int k, long x, long y, long N, int* sign) {
  GIdx a{norm_mod(x, N), norm_mod(y, N)};
  GIdx b{norm_mod(-x, N), norm_mod(-y, N)};
  if (b < a) {
    if (k % 2 == 1) *sign = -*sign;
    return b;
  }
  return a;
}

}  // namespace

std::string RZProduct::str() const {
  std::ostringstream os;
  os << "(" << scale.get_str() << ") * [";
  bool first = true;
  for (auto& [key, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*G2(" << key.first[0] << "," << key.first[1] << ")*G1("
       << key.second[0] << "," << key.second[1] << ")";
  }
  os << "] @ " << N;
  return os.str();
}

RZProduct phi_to_F(const PhiCombo& phi) {
  long N = phi.N;
  RZProduct out;
  out.N = N;
  out.scale = phi.scale;

  for (auto& [key, lambda] : phi.entries) {
    if (key.first == Pt{0, 0})
      throw std::invalid_argument("phi_to_F: phi((0,0),v) must vanish");
  }

  auto add_term = [&](int s2, long x2, long y2, int s1, long x1, long y1,
                      const Rat& coeff) {
    int sign = s2 * s1;
    GIdx k2 = canonical_gidx(2, x2, y2, N, &sign);
    GIdx k1 = canonical_gidx(1, x1, y1, N, &sign);
    auto key = std::make_pair(k2, k1);
    Rat v = coeff * sign;
    auto it = out.terms.find(key);
    if (it == out.terms.end())
      out.terms[key] = v;
    else {
      it->second += v;
      if (it->second == 0) out.terms.erase(it);
    }
  };

  for (auto& [key, lambda] : phi.entries) {
    long a = key.first.first, b = key.first.second;
    long c = key.second.first, d = key.second.second;
    // G^(2)_{d,a} G^(1)_{b,-c} - G^(2)_{d,-a} G^(1)_{b,c}
    add_term(1, d, a, 1, b, -c, lambda);
    add_term(1, d, -a, 1, b, c, -lambda);
  }

  // G^(2)_{0,y} is only quasi-modular, with a y-independent anomaly; every
  // G^(1)-factor paired against first-index-0 weight-2 series must therefore
  // carry coefficients summing to zero (the balanced-difference hypothesis)
  std::map<GIdx, Rat> anomaly;
  for (auto& [k, c] : out.terms)
    if (k.first[0] % N == 0) anomaly[k.second] += c;
  for (auto& [k1, s] : anomaly) {
    if (s != 0)
      throw UnbalancedFamilyError(
          "phi_to_F: unbalanced d=0 family against G1(" + std::to_string(k1[0]) +
          "," + std::to_string(k1[1]) + "), coefficient sum " + s.get_str());
  }
  return out;
}

SeriesWithSymbols rz_expand(const RZProduct& p, long order) {
  SeriesWithSymbols out;
  long N = p.N;
  std::map<GIdx, QSeries> cache1, cache2;
  auto series_of = [&](int k, const GIdx& idx) -> const QSeries& {
    auto& cache = (k == 2) ? cache2 : cache1;
    auto it = cache.find(idx);
    if (it == cache.end())
      it = cache.emplace(idx, G_qexp(k, idx[0], idx[1], N, order, true)).first;
    return it->second;
  };
  auto symbol_of = [&](int k, const GIdx& idx) -> std::optional<A0Symbol> {
    if (idx[0] % N != 0) return std::nullopt;  // a0 = 0 policy when first index != 0
    long y = idx[1];  // canonical already: y in [0, N/2] for x = 0
    if (y == 0) throw std::logic_error("rz_expand: G index (0,0)");
    if (k % 2 == 1 && 2 * y == N) return std::nullopt;  // odd symbol at 2-torsion: 0
    return A0Symbol{k, y};
  };

  for (auto& [key, coeff] : p.terms) {
    const QSeries& s2 = series_of(2, key.first);
    const QSeries& s1 = series_of(1, key.second);
    Cyclotomic c(coeff);
    out.base += (s2 * s1) * c;
    auto sym2 = symbol_of(2, key.first);
    auto sym1 = symbol_of(1, key.second);
    if (sym2) {
      auto it = out.lin.find(*sym2);
      if (it == out.lin.end())
        out.lin[*sym2] = s1 * c;
      else
        it->second += s1 * c;
    }
    if (sym1) {
      auto it = out.lin.find(*sym1);
      if (it == out.lin.end())
        out.lin[*sym1] = s2 * c;
      else
        it->second += s2 * c;
    }
    if (sym2 && sym1) out.quad[{*sym2, *sym1}] += coeff;
  }
  return out;
}

std::string EisBasisElement::label() const {
  std::string s = "E3(" + phi.name() + "," + psi.name() + "," + std::to_string(t) + ")";
  if (combo == 1) s += "+conj";
  if (combo == 2) s = "i*(" + s + "-conj)";
  return s;
}

QSeries EisBasisElement::series(long order) const {
  QSeries a = E3_qexp(phi, psi, t, order);
  if (combo == 0) return a;
  QSeries b = E3_qexp(phi.conjugate(), psi.conjugate(), t, order);
  if (combo == 1) return a + b;
  QSeries d = a - b;
  return d * Cyclotomic::root_of_unity(4, 1);
}

std::vector<EisBasisElement> enumerate_eis_basis(long M) {
  std::vector<EisBasisElement> out;
  for (long n1 = 1; n1 <= M; ++n1) {
    if (M % n1 != 0) continue;
    for (long n2 = 1; n2 <= M; ++n2) {
      if (M % n2 != 0 || (M % (n1 * n2)) != 0) continue;
      for (auto& phi : DirichletChar::primitive(n1)) {
        for (auto& psi : DirichletChar::primitive(n2)) {
          if (phi.parity() * psi.parity() != -1) continue;
          // conjugate-pair handling: keep the lexicographically first of the
          // pair and emit Re/Im combinations when the pair is genuinely complex
          bool realpair = phi.real_valued() && psi.real_valued();
          if (!realpair) {
            DirichletChar pc = phi.conjugate(), sc = psi.conjugate();
            auto key = std::make_pair(phi.name(), psi.name());
            auto ckey = std::make_pair(pc.name(), sc.name());
            if (ckey < key) continue;  // the conjugate generates this pair
          }
          for (long t = 1; n1 * n2 * t <= M; ++t) {
            if (M % (n1 * n2 * t) != 0) continue;
            if (realpair) {
              out.push_back({phi, psi, t, 0});
            } else {
              out.push_back({phi, psi, t, 1});
              out.push_back({phi, psi, t, 2});
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<CuspBasisElement> enumerate_cusp_basis(long M) {
  std::vector<CuspBasisElement> out;
  for (const char* label : {"f8", "f12", "f16"}) {
    const NewformTable& t = newform(label);
    if (M % t.level != 0) continue;
    for (long shift = 1; t.level * shift <= M; ++shift) {
      if (M % (t.level * shift) != 0) continue;
      std::string l = t.label;
      if (shift > 1) l += "@" + std::to_string(shift);
      out.push_back({l, &t, shift});
    }
  }
  return out;
}

namespace {

// exact reduced row echelon solve of [A | b]. The first `strict_cols` columns
// must come out uniquely determined (pivot columns); later columns (the a0
// symbol block) may stay free: only balanced combinations of the constants
// are visible in the q-expansion data. Returns the particular solution with
// free variables set to zero plus a basis of the free directions.
bool solve_affine(std::vector<std::vector<Rat>>& m, size_t ncols, size_t strict_cols,
                  std::vector<Rat>* out, std::vector<std::vector<Rat>>* null_basis,
                  std::string* diag) {
  size_t rows = m.size();
  std::vector<long> pivot_col_of_row;
  std::vector<char> is_pivot(ncols, 0);
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
    pivot_col_of_row.push_back(static_cast<long>(c));
    is_pivot[c] = 1;
    ++r;
  }
  for (size_t i = r; i < rows; ++i) {
    if (m[i][ncols] != 0) {
      if (diag) *diag = "inconsistent system (nonzero residual row)";
      return false;
    }
  }
  for (size_t c = 0; c < strict_cols; ++c) {
    if (!is_pivot[c]) {
      if (diag) *diag = "identification is underdetermined in the form basis";
      return false;
    }
  }
  std::vector<Rat> x(ncols, Rat(0));
  for (size_t i = 0; i < r; ++i) x[pivot_col_of_row[i]] = m[i][ncols];
  if (out) *out = std::move(x);
  if (null_basis) {
    null_basis->clear();
    for (size_t c = strict_cols; c < ncols; ++c) {
      if (is_pivot[c]) continue;
      std::vector<Rat> v(ncols, Rat(0));
      v[c] = 1;
      for (size_t i = 0; i < r; ++i) {
        long pc = pivot_col_of_row[i];
        v[pc] = -m[i][c];
      }
      null_basis->push_back(std::move(v));
    }
  }
  return true;
}

Rat coeff_rational(const QSeries& s, const Rat& e) {
  Cyclotomic c = s.coeff(e);
  if (!c.is_rational())
    throw std::logic_error("identification: non-rational coefficient encountered");
  return c.rational_value();
}

}  // namespace

FormIdentification expand_and_identify(const RZProduct& p, const Rat& t, long M,
                                       long extra_rows) {
  FormIdentification id;
  id.target_level = M;
  id.rescale = t;

  long B = sturm_bound(3, M) + 10 + extra_rows;
  // exponents of the raw product needed: e with e * t <= B
  Rat need = Rat(B) / t;
  long order = static_cast<long>(floor_rat(need).get_si()) + 1;

  SeriesWithSymbols sws = rz_expand(p, order);
  QSeries base = sws.base.rescaled(t);
  std::vector<std::pair<A0Symbol, QSeries>> lin;
  for (auto& [sym, s] : sws.lin) lin.push_back({sym, s.rescaled(t)});

  // integrality of rescaled exponents
  auto check_integral = [](const QSeries& s) {
    for (auto& [k, v] : s.raw())
      if (k % s.denominator_exponent() != 0)
        throw std::invalid_argument(
            "expand_and_identify: rescaled series has non-integer exponents");
  };
  check_integral(base);
  for (auto& [sym, s] : lin) check_integral(s);

  auto eis = enumerate_eis_basis(M);
  auto cusp = enumerate_cusp_basis(M);
  for (auto& cb : cusp) {
    if (static_cast<long>(cb.table->count()) * cb.shift < B)
      throw std::runtime_error("newform table too short for Sturm bound");
  }

  size_t ncols = cusp.size() + eis.size() + lin.size();
  std::vector<QSeries> eis_series;
  for (auto& e : eis) eis_series.push_back(e.series(B + 1));
  std::vector<QSeries> cusp_series;
  for (auto& cb : cusp) cusp_series.push_back(cb.table->qexp(B + 1, cb.shift));

  std::vector<std::vector<Rat>> m;
  for (long n = 1; n <= B; ++n) {
    std::vector<Rat> row(ncols + 1, Rat(0));
    size_t j = 0;
    for (auto& s : cusp_series) row[j++] = coeff_rational(s, Rat(n));
    for (auto& s : eis_series) row[j++] = coeff_rational(s, Rat(n));
    for (auto& [sym, s] : lin) row[j++] = -coeff_rational(s, Rat(n));
    row[ncols] = coeff_rational(base, Rat(n));
    m.push_back(std::move(row));
  }
  id.rows_used = B;

  size_t strict = cusp.size() + eis.size();
  std::vector<Rat> x;
  std::vector<std::vector<Rat>> null_basis;
  if (!solve_affine(m, ncols, strict, &x, &null_basis, &id.diagnostic)) {
    id.identified = false;
    return id;
  }

  // free symbol directions must be invisible: their partner-series
  // combinations have to vanish identically on every computed coefficient
  // (not only the solved rows)
  for (auto& v : null_basis) {
    for (size_t c = 0; c < strict; ++c) {
      if (v[c] != 0) {
        id.identified = false;
        id.diagnostic = "form coefficients are coupled to a free constant direction";
        return id;
      }
    }
    QSeries combo;
    size_t j = strict;
    for (auto& [sym, s] : lin) {
      if (v[j] != 0) combo += s * Cyclotomic(v[j]);
      ++j;
    }
    if (!combo.is_zero_series()) {
      id.identified = false;
      id.diagnostic = "free constant-term direction is not identically invisible";
      return id;
    }
  }

  id.identified = true;
  size_t j = 0;
  for (auto& cb : cusp) {
    if (x[j] != 0) id.cusp[cb.label] = x[j];
    ++j;
  }
  for (auto& e : eis) {
    if (x[j] != 0) id.eis.push_back({x[j], e});
    ++j;
  }
  std::map<A0Symbol, Rat> syms;
  std::map<A0Symbol, size_t> sym_col;
  for (auto& [sym, s] : lin) {
    sym_col[sym] = j;
    syms[sym] = x[j++];
  }
  id.symbols = syms;

  // constant-term consistency: quad part + resolved symbols against the
  // Eisenstein constants (cusp forms contribute nothing at q^0). The value
  // must also be gauge independent along the free symbol directions.
  auto quad_value = [&](const std::vector<Rat>& xs) {
    Rat acc = 0;
    for (auto& [pr, c] : sws.quad)
      acc += c * xs[sym_col.at(pr.first)] * xs[sym_col.at(pr.second)];
    return acc;
  };
  Rat lhs = quad_value(x);
  for (auto& v : null_basis) {
    // gauge check: quad(x + v) and quad(x + 2v) must agree with quad(x)
    std::vector<Rat> x1 = x, x2 = x;
    for (size_t c = 0; c < ncols; ++c) {
      x1[c] += v[c];
      x2[c] += v[c] * 2;
    }
    if (quad_value(x1) != lhs || quad_value(x2) != lhs) {
      id.identified = false;
      id.diagnostic = "constant term is gauge dependent along a free direction";
      return id;
    }
  }
  // base and lin series have no q^0 terms (products of positive-exponent series)
  Rat rhs = 0;
  for (size_t i = 0; i < eis.size(); ++i) {
    Rat coef = 0;
    for (auto& [cc, e] : id.eis)
      if (e.label() == eis[i].label()) coef = cc;
    if (coef == 0) continue;
    Cyclotomic c0 = eis_series[i].coeff(Rat(0));
    if (!c0.is_rational())
      throw std::logic_error("identification: non-rational Eisenstein constant");
    rhs += coef * c0.rational_value();
  }
  id.constant_consistent = (lhs == rhs);
  return id;
}

EisCombo level_degeneracy_pullback(const EisCombo& combo) {
  if (combo.N != 4)
    throw std::invalid_argument("level_degeneracy_pullback: only level 4 -> 8 supported");
  EisCombo out;
  out.weight = combo.weight;
  out.N = 8;
  out.sign_ambiguous = combo.sign_ambiguous;
  long mult = (combo.weight == 0) ? 2 : 4;
  for (auto& [u, c] : combo.coeff) {
    long a = u.first, b = u.second;
    for (long ap : {a, a + 4}) {
      out.add({ap % 8, (ap + 2 * b) % 8}, Rat(mult) * c);
    }
  }
  return out;
}

}  // namespace mm
