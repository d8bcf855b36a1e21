#include "modmahler/modsym.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace mm {

namespace {
long norm_mod(long x, long N) { return ((x % N) + N) % N; }

// canonical class of b under b ~ -b; returns -1 for b = 0
long log_class(long b, long N) {
  long bb = norm_mod(b, N);
  if (bb == 0) return -1;
  return std::min(bb, N - bb);
}
}  // namespace

WeightPoly sl2_act(const Mat2& g, const WeightPoly& p) {
  // P(dX - bY, -cX + aY) for P = mX + nY
  return {p.m * g.d - p.n * g.c, -p.m * g.b + p.n * g.a};
}

namespace {

// continued-fraction convergents of num/den (den > 0), including p_{-1}/q_{-1} = 1/0
std::vector<std::pair<long, long>> convergents(long num, long den) {
  std::vector<std::pair<long, long>> cs;
  cs.push_back({1, 0});
  long pm1 = 1, qm1 = 0, pm2 = 0, qm2 = 1;
  long a = num, b = den;
  while (b != 0) {
    long q = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --q;  // floor division
    long r = a - q * b;
    long p = q * pm1 + pm2;
    long qq = q * qm1 + qm2;
    cs.push_back({p, qq});
    pm2 = pm1;
    qm2 = qm1;
    pm1 = p;
    qm1 = qq;
    a = b;
    b = r;
  }
  return cs;
}

// prefer the representative of ±g with positive bottom-left entry
Mat2 normalize_sign(Mat2 g) {
  if (g.c < 0 || (g.c == 0 && g.d < 0)) return g.neg();
  return g;
}

// segments of the unimodular path from infinity to r, in order
std::vector<Mat2> segments_from_infinity(const Cusp& r) {
  std::vector<Mat2> segs;
  if (r.is_infinity()) return segs;
  auto cs = convergents(r.num, r.den);
  // segment j goes cs[j] -> cs[j+1]; g(0) = cs[j], g(oo) = cs[j+1];
  // cs[j+1].p * cs[j].q - cs[j].p * cs[j+1].q = (-1)^{j-1} with cs[0] = 1/0
  for (size_t j = 0; j + 1 < cs.size(); ++j) {
    long s = (j % 2 == 0) ? -1 : 1;
    Mat2 g{cs[j + 1].first, s * cs[j].first, cs[j + 1].second, s * cs[j].second};
    if (!g.is_sl2()) throw std::logic_error("segments_from_infinity: bad determinant");
    segs.push_back(normalize_sign(g));
  }
  return segs;
}

std::vector<Mat2> reversed_segments(std::vector<Mat2> segs) {
  // reverse path order and each segment's orientation: swap the roles of 0, oo
  std::vector<Mat2> out;
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    Mat2 h = normalize_sign(*it * mat_sigma());
    if (!h.is_sl2()) throw std::logic_error("reversed_segments: bad determinant");
    out.push_back(h);
  }
  return out;
}

Cusp apply_to_cusp(const Mat2& g, const Cusp& c) {
  long n, d;
  if (c.is_infinity()) {
    n = g.a;
    d = g.c;
  } else {
    n = g.a * c.num + g.b * c.den;
    d = g.c * c.num + g.d * c.den;
  }
  return Cusp(n, d);
}

}  // namespace

ManinDecomposition manin_decompose(const WeightPoly& p, const Cusp& alpha,
                                   const Cusp& beta, bool rewrite_y) {
  ManinDecomposition dec;
  if (alpha == beta) return dec;

  // unimodular endpoint pair: single segment
  auto unimodular = [&]() -> bool {
    long det = alpha.num * beta.den - beta.num * alpha.den;
    return det == 1 || det == -1;
  };
  if (unimodular()) {
    long s = beta.num * alpha.den - alpha.num * beta.den;  // ±1
    Mat2 g{beta.num, s * alpha.num, beta.den, s * alpha.den};
    if (!g.is_sl2()) g = Mat2{beta.num, -s * alpha.num, beta.den, -s * alpha.den};
    if (!g.is_sl2()) throw std::logic_error("manin_decompose: unimodular failed");
    dec.segments.push_back(g);
  } else {
    std::vector<Mat2> part1, part2;
    if (!alpha.is_infinity()) part1 = reversed_segments(segments_from_infinity(alpha));
    if (!beta.is_infinity()) part2 = segments_from_infinity(beta);
    dec.segments = part1;
    dec.segments.insert(dec.segments.end(), part2.begin(), part2.end());
  }

  // cusp chain
  if (!dec.segments.empty()) {
    dec.path_cusps.push_back(apply_to_cusp(dec.segments.front(), Cusp(0, 1)));
    for (auto& g : dec.segments) dec.path_cusps.push_back(apply_to_cusp(g, Cusp::infinity()));
  }

  for (auto& g : dec.segments) {
    WeightPoly pp = sl2_act(g.inv(), p);
    if (pp.m != 0) dec.terms.push_back({Rat(pp.m), g, 'X'});
    if (pp.n != 0) {
      if (rewrite_y)
        dec.terms.push_back({Rat(-pp.n), g * mat_sigma(), 'X'});
      else
        dec.terms.push_back({Rat(pp.n), g, 'Y'});
    }
  }
  return dec;
}

void PhiCombo::add(Pt u, Pt v, const Rat& c) {
  if (c == 0) return;
  u = {norm_mod(u.first, N), norm_mod(u.second, N)};
  v = {norm_mod(v.first, N), norm_mod(v.second, N)};
  auto key = std::make_pair(u, v);
  auto it = entries.find(key);
  if (it == entries.end())
    entries[key] = c;
  else {
    it->second += c;
    if (it->second == 0) entries.erase(it);
  }
}

bool PhiCombo::operator==(const PhiCombo& o) const {
  return N == o.N && scale == o.scale && entries == o.entries;
}

void PhiCombo::extract_content() {
  if (entries.empty()) return;
  // content = gcd of numerators / lcm of denominators
  Int num_g = 0, den_l = 1;
  for (auto& [k, c] : entries) {
    Int n = abs(c.get_num());
    mpz_gcd(num_g.get_mpz_t(), num_g.get_mpz_t(), n.get_mpz_t());
    Int d = c.get_den();
    mpz_lcm(den_l.get_mpz_t(), den_l.get_mpz_t(), d.get_mpz_t());
  }
  Rat content(num_g, den_l);
  content.canonicalize();
  if (content == 0) return;
  for (auto& [k, c] : entries) c /= content;
  scale *= content;
}

std::string PhiCombo::str() const {
  std::ostringstream os;
  os << "(" << scale.get_str() << ") * [";
  bool first = true;
  for (auto& [k, c] : entries) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*[(" << k.first.first << "," << k.first.second << "),("
       << k.second.first << "," << k.second.second << ")]";
  }
  os << "]";
  return os.str();
}

PhiCombo make_base_phi(const EisCombo& w0, const EisCombo& w1) {
  if (w0.N != w1.N) throw std::invalid_argument("make_base_phi: level mismatch");
  if (w0.weight != 0 || w1.weight != 1)
    throw std::invalid_argument("make_base_phi: expected weights 0 and 1");
  PhiCombo phi;
  phi.N = w0.N;
  for (auto& [u, cu] : w0.coeff)
    for (auto& [v, cv] : w1.coeff) phi.add(u, v, cu * cv);
  phi.extract_content();
  return phi;
}

PhiCombo phi_pullback(const PhiCombo& base, const std::vector<ShokurovTerm>& terms) {
  PhiCombo out;
  out.N = base.N;
  out.scale = base.scale;
  long N = base.N;
  for (auto& t : terms) {
    Mat2 g = t.g;
    Rat c = t.c;
    if (t.base == 'Y') {
      g = g * mat_sigma();
      c = -c;
    }
    Mat2 gm = g.mod(N);
    for (auto& [key, c0] : base.entries) {
      if (key.first == Pt{0, 0})
        throw std::invalid_argument("phi_pullback: base support contains u=(0,0)");
      auto ug = row_times({key.first.first, key.first.second}, gm, N);
      auto vg = row_times({key.second.first, key.second.second}, gm, N);
      out.add({ug[0], ug[1]}, {vg[0], vg[1]}, c * c0);
    }
  }
  return out;
}

namespace {

// conditions (1) and (2) of the absolute-convergence proposition for a combo
struct CondResult {
  bool cond1 = false;
  bool cond2_structural = false;
  bool cond2_numeric = false;
};

CondResult check_conditions(const PhiCombo& phi) {
  long N = phi.N;
  CondResult r;
  Rat c1 = 0;
  std::map<long, Rat> log_classes;
  long double numeric = 0;
  for (auto& [key, c] : phi.entries) {
    long u1 = key.first.first, u2 = key.first.second;
    long v1 = key.second.first;
    c1 += c * bernoulli_frac(2, rat(u1, N)) * bernoulli_frac(3, rat(v1, N));
    if (u1 % N == 0) {
      long cls = log_class(u2, N);
      if (cls < 0) throw std::logic_error("convergence_check: u=(0,0) in support");
      Rat w = c * bernoulli_frac(3, rat(v1, N));
      log_classes[cls] += w;
      long double ang = 3.14159265358979323846264338327950288L * u2 / N;
      numeric += to_ld(w) * std::log(std::abs(2.0L * std::sin(ang)));
    }
  }
  r.cond1 = (c1 == 0);
  r.cond2_structural = true;
  for (auto& [cls, w] : log_classes)
    if (w != 0) r.cond2_structural = false;
  r.cond2_numeric = std::abs(numeric) < 1e-12L;
  return r;
}

PhiCombo transform_by(const PhiCombo& phi, const Mat2& g) {
  PhiCombo out;
  out.N = phi.N;
  out.scale = phi.scale;
  Mat2 gm = g.mod(phi.N);
  for (auto& [key, c] : phi.entries) {
    auto ug = row_times({key.first.first, key.first.second}, gm, phi.N);
    auto vg = row_times({key.second.first, key.second.second}, gm, phi.N);
    out.add({ug[0], ug[1]}, {vg[0], vg[1]}, c);
  }
  return out;
}

}  // namespace

ConvergenceReport convergence_check(const PhiCombo& phi) {
  ConvergenceReport rep;
  CondResult x = check_conditions(phi);
  CondResult y = check_conditions(transform_by(phi, mat_sigma()));
  rep.x_converges = x.cond1 && x.cond2_structural;
  rep.y_converges = y.cond1 && y.cond2_structural;
  rep.structural_warning = (!x.cond2_structural && x.cond2_numeric) ||
                           (!y.cond2_structural && y.cond2_numeric);
  return rep;
}

bool ResidueExpr::zero() const {
  return alpha2_log.empty() && alpha_log.empty() && alpha_zhat.empty();
}

ResidueExpr& ResidueExpr::operator+=(const ResidueExpr& o) {
  auto merge = [](std::map<long, Rat>& into, const std::map<long, Rat>& from) {
    for (auto& [k, v] : from) {
      auto it = into.find(k);
      if (it == into.end())
        into[k] = v;
      else {
        it->second += v;
        if (it->second == 0) into.erase(it);
      }
    }
  };
  merge(alpha2_log, o.alpha2_log);
  merge(alpha_log, o.alpha_log);
  merge(alpha_zhat, o.alpha_zhat);
  return *this;
}

ResidueExpr& ResidueExpr::scale_by(const Rat& r) {
  if (r == 0) {
    alpha2_log.clear();
    alpha_log.clear();
    alpha_zhat.clear();
    return *this;
  }
  for (auto& [k, v] : alpha2_log) v *= r;
  for (auto& [k, v] : alpha_log) v *= r;
  for (auto& [k, v] : alpha_zhat) v *= r;
  return *this;
}

std::string ResidueExpr::str() const {
  std::ostringstream os;
  for (auto& [k, v] : alpha2_log)
    os << v.get_str() << "*(pi^2/N^2)*log|1-z^" << k << "|*a^2 ";
  for (auto& [k, v] : alpha_log)
    os << v.get_str() << "*(pi^2/N^2)*log|1-z^" << k << "|*a ";
  for (auto& [k, v] : alpha_zhat)
    os << v.get_str() << "*(pi*i/N^2)*Zhat(" << k << ")*a ";
  if (zero()) os << "0";
  return os.str();
}

ResidueExpr residue_limit(Pt u, Pt v, char fiber, long N) {
  long a = norm_mod(u.first, N), b = norm_mod(u.second, N);
  long c = norm_mod(v.first, N), d = norm_mod(v.second, N);
  if (a == 0 && b == 0) throw std::invalid_argument("residue_limit: u = (0,0)");
  ResidueExpr e;
  e.N = N;
  if (fiber == 'X') {
    if (a == 0) {
      Rat w = Rat(-4) * bernoulli_frac(3, rat(c, N));
      if (w != 0) e.alpha2_log[log_class(b, N)] += w;
    }
    if (c == 0) {
      // Zhat(d): antisymmetric; Zhat(0) = 0 and Zhat(N/2) = 0
      long dd = d;
      int sign = 1;
      if (dd != 0 && 2 * dd != N) {
        if (dd > N - dd) {
          dd = N - dd;
          sign = -1;
        }
        Rat w = Rat(3 * sign) * bernoulli_frac(2, rat(a, N));
        if (w != 0) {
          e.alpha_zhat[dd] += w;
          if (e.alpha_zhat[dd] == 0) e.alpha_zhat.erase(dd);
        }
      }
    }
  } else if (fiber == 'Y') {
    if (a == 0) {
      Rat w = Rat(-8) * bernoulli_frac(3, rat(c, N));
      if (w != 0) e.alpha_log[log_class(b, N)] += w;
    }
  } else {
    throw std::invalid_argument("residue_limit: fiber must be 'X' or 'Y'");
  }
  return e;
}

namespace {

bool is_multiple_mod(long d, long b, long N) {
  long dd = norm_mod(d, N), bb = norm_mod(b, N);
  if (dd == 0) return true;
  for (long k = 0; k < N; ++k)
    if (norm_mod(k * bb, N) == dd) return true;
  return false;
}

bool residue_scan(long b, long bp, long d, long N) {
  auto table = CosetTable::get(N);
  for (auto& g : table->reps()) {
    for (char fiber : {'X', 'Y'}) {
      auto ub = row_times({0, b}, g, N);
      auto ubp = row_times({0, bp}, g, N);
      auto vd = row_times({0, d}, g, N);
      ResidueExpr e = residue_limit({ub[0], ub[1]}, {vd[0], vd[1]}, fiber, N);
      ResidueExpr ep = residue_limit({ubp[0], ubp[1]}, {vd[0], vd[1]}, fiber, N);
      ep.scale_by(Rat(-1));
      e += ep;
      if (!e.zero()) return false;
    }
  }
  return true;
}

}  // namespace

bool residue_trivial_check(long b, long bp, long d, long N) {
  long bb = norm_mod(b, N), bbp = norm_mod(bp, N), dd = norm_mod(d, N);
  if (bb == bbp) return true;
  if (bb == 0 || bbp == 0)
    throw std::invalid_argument("residue_trivial_check: b, b' must be nonzero");
  bool crit = is_multiple_mod(dd, bb, N) && is_multiple_mod(dd, bbp, N);
  if (crit) {
    long g = dd == 0 ? N : std::gcd(dd, N);
    bool cong = (norm_mod(bb - bbp, g) == 0) || (norm_mod(bb + bbp, g) == 0);
    crit = cong;
  }
  bool scan = residue_scan(bb, bbp, dd, N);
  if (crit && !scan)
    throw std::logic_error("residue_trivial_check: criterion true but symbolic scan fails");
  // the criterion is sufficient, not necessary; report the scan when they differ
  return crit || scan ? (crit ? true : scan) : false;
}

bool path_residue_gate(const PhiCombo& base, const ManinDecomposition& dec,
                       const WeightPoly& p0, std::string* diag) {
  if (dec.segments.size() <= 1) return true;  // single Manin symbol: exact cycle identity
  long N = base.N;
  // collect (cusp, transport) pairs: one transport per visited cusp
  std::vector<std::pair<Cusp, Mat2>> corners;
  for (size_t i = 0; i < dec.segments.size(); ++i) {
    const Mat2& g = dec.segments[i];
    if (i == 0) corners.push_back({dec.path_cusps[i], g * mat_sigma()});  // h(oo) = g(0)
    corners.push_back({dec.path_cusps[i + 1], g});                        // g(oo)
  }
  for (auto& [cusp, h0] : corners) {
    Mat2 h = h0;
    if (!h.is_sl2()) h = h.neg();
    if (!h.is_sl2()) {
      if (diag) *diag = "corner transport not unimodular at " + cusp.str();
      return false;
    }
    WeightPoly pp = sl2_act(h.inv(), p0);
    ResidueExpr total;
    total.N = N;
    Mat2 hm = h.mod(N);
    for (auto& [key, c] : base.entries) {
      auto uh = row_times({key.first.first, key.first.second}, hm, N);
      auto vh = row_times({key.second.first, key.second.second}, hm, N);
      if (pp.m != 0) {
        ResidueExpr ex = residue_limit({uh[0], uh[1]}, {vh[0], vh[1]}, 'X', N);
        ex.scale_by(c * Rat(pp.m));
        total += ex;
      }
      if (pp.n != 0) {
        ResidueExpr ey = residue_limit({uh[0], uh[1]}, {vh[0], vh[1]}, 'Y', N);
        ey.scale_by(c * Rat(pp.n));
        total += ey;
      }
    }
    if (!total.zero()) {
      if (diag)
        *diag = "nonvanishing corner residue at cusp " + cusp.str() + ": " + total.str();
      return false;
    }
  }
  return true;
}

}  // namespace mm
