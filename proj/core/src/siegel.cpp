#include "modmahler/siegel.hpp"

#include <numeric>
#include <sstream>

namespace mm {

Cusp::Cusp(long n, long d) {
  if (n == 0 && d == 0) throw std::invalid_argument("Cusp 0/0");
  long g = std::gcd(std::abs(n), std::abs(d));
  n /= g;
  d /= g;
  if (d < 0 || (d == 0 && n < 0)) {
    n = -n;
    d = -d;
  }
  num = n;
  den = d;
}

Cusp Cusp::parse(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "oo" || t == "inf" || t == "infinity") return Cusp::infinity();
  auto slash = t.find('/');
  if (slash == std::string::npos) return Cusp(std::stol(t), 1);
  return Cusp(std::stol(t.substr(0, slash)), std::stol(t.substr(slash + 1)));
}

std::string Cusp::str() const {
  if (is_infinity()) return "oo";
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Mat2 cusp_matrix(const Cusp& cusp) {
  if (cusp.is_infinity()) return Mat2{};
  long c = cusp.num, d = cusp.den;
  // find e, f with c f - e d = 1
  long old_r = c, r = d;
  long old_s = 1, s = 0;
  long old_t = 0, t = 1;
  while (r != 0) {
    long q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  // old_r = gcd = ±1 = c*old_s + d*old_t
  long g = old_r;
  long e = -old_t * g, f = old_s * g;  // c f - e d = g^2 = 1
  Mat2 m{c, e, d, f};
  if (!m.is_sl2()) throw std::logic_error("cusp_matrix: construction failed");
  return m;
}

QSeries siegel_qexp(const SiegelIndex& idx, long window) {
  long N = idx.N;
  Rat atN(idx.a_tilde(), N);
  Rat low = bernoulli_poly(2, atN) / 2;
  Rat cutoff = low + Rat(window);

  QSeries s = QSeries::monomial(Cyclotomic(Rat(1)), low);
  s.set_truncation(cutoff);
  auto mul_factor = [&](const Rat& e, const Cyclotomic& zeta) {
    // multiply by (1 - zeta q^e)
    QSeries f = QSeries::constant(Cyclotomic(Rat(1)));
    f.add_coeff(e, -zeta);
    s = s * f;
    s.set_truncation(cutoff);
  };

  // prod_{n>=0} (1 - q^{n + a/N} zeta^b), skip exponent-0 factor only when
  // a=0 gives n=0 exponent 0 (constant factor 1 - zeta^b)
  for (long n = 0;; ++n) {
    Rat e = Rat(n) + atN;
    if (low + e >= cutoff && e > 0) break;
    if (e == 0 && idx.a_tilde() == 0 && n == 0) {
      // the n=0 factor for a=0 is the constant (1 - zeta^b)
      mul_factor(Rat(0), Cyclotomic::root_of_unity(N, idx.b));
      continue;
    }
    mul_factor(e, Cyclotomic::root_of_unity(N, idx.b));
    if (e > Rat(window)) break;
  }
  for (long n = 1;; ++n) {
    Rat e = Rat(n) - atN;
    if (low + e >= cutoff) break;
    mul_factor(e, Cyclotomic::root_of_unity(N, -idx.b));
    if (e > Rat(window)) break;
  }
  return s;
}

namespace {

Rat branch1_phase(const SiegelIndex& idx, long k, SiegelIndex* target) {
  // gamma = (1 k; 0 1): g_{a,b}(tau + k) = e^{i pi k B2(a~/N)} g_{a, ka+b}
  Rat r = Rat(k) * bernoulli_poly(2, rat(idx.a_tilde(), idx.N));
  *target = SiegelIndex(idx.a, k * idx.a + idx.b, idx.N);
  return mod2(r);
}

Rat branch2_phase(const SiegelIndex& idx, const Mat2& g, SiegelIndex* target) {
  // paper letters: gamma = (c e; d f) with d > 0
  long c = g.a, e = g.b, d = g.c, f = g.d;
  (void)e;
  long N = idx.N;
  auto tilde = [N](long x) { return ((x % N) + N) % N; };
  long at = idx.a_tilde();
  long ap = tilde(idx.a * g.a + idx.b * g.c);
  long bp = tilde(idx.a * g.b + idx.b * g.d);
  Rat r = rat(c, d) * bernoulli_poly(2, rat(at, N)) +
          rat(f, d) * bernoulli_poly(2, rat(ap, N));
  if (at == 0) r += periodic_p1(rat(idx.b, N));
  if (ap == 0) r -= periodic_p1(rat(bp, N));
  Rat sum = 0;
  for (long k = 1; k <= d; ++k) {
    Rat x = (Rat(k) - rat(at, N)) / d;
    Rat y = rat(c, d) * (Rat(k) - rat(at, N)) - rat(idx.b, N);
    sum += periodic_p1(x) * periodic_p1(y);
  }
  r -= 2 * sum;
  *target = SiegelIndex(ap, bp, N);
  return mod2(r);
}

}  // namespace

SiegelPhase transformation_phase(const SiegelIndex& idx, const Mat2& gamma) {
  if (!gamma.is_sl2()) throw std::invalid_argument("transformation_phase: gamma not in SL2(Z)");
  long N = idx.N;

  Mat2 g = gamma;
  bool negated = false;
  if (g.c < 0 || (g.c == 0 && g.a < 0)) {
    g = g.neg();  // -gamma acts identically on H
    negated = true;
  }

  SiegelPhase out;
  SiegelIndex prelim(1, 0, N);
  Rat r;
  if (g.c == 0) {
    // g = (1 k; 0 1)
    r = branch1_phase(idx, g.b, &prelim);
  } else {
    r = branch2_phase(idx, g, &prelim);
  }

  if (!negated) {
    out.r = r;
    out.target = prelim;
    return out;
  }
  // computed with -gamma: prelim = (a,b)(-gamma) = -(a,b)gamma; fix up.
  long A = prelim.a, B = prelim.b;
  long ta = ((-A) % N + N) % N, tb = ((-B) % N + N) % N;
  SiegelIndex target(ta, tb, N);
  if (A % N != 0) {
    out.r = r;  // g_{A,B} = g_{-A,-B} when A != 0
  } else {
    // g_{0,B} = -zeta_N^{B} g_{0,-B}: fold the constant into the phase
    out.r = mod2(r + 1 + rat(2 * prelim.b, N));
  }
  out.target = target;
  return out;
}

UnitProduct UnitProduct::parse(const std::string& text) {
  auto at = text.find('@');
  if (at == std::string::npos)
    throw std::invalid_argument("UnitProduct: missing '@ level' part: " + text);
  std::string left = text.substr(0, at);
  std::string right = text.substr(at + 1);
  // strip optional word "level"
  {
    std::string r2;
    for (char c : right)
      if (!isspace(static_cast<unsigned char>(c))) r2 += c;
    if (r2.rfind("level", 0) == 0) r2 = r2.substr(5);
    right = r2;
  }
  UnitProduct up;
  up.N = std::stol(right);

  // split by '*' but not inside parentheses
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : left) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '*' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);

  Cyclotomic pref(Rat(1));
  bool negate_next = false;
  for (auto& raw : parts) {
    std::string p;
    for (char c : raw)
      if (!isspace(static_cast<unsigned char>(c))) p += c;
    if (p.empty()) continue;
    bool neg = false;
    if (p[0] == '-' && p.rfind("-g(", 0) == 0) {
      neg = true;
      p = p.substr(1);
    }
    if (p.rfind("g(", 0) == 0) {
      auto close = p.find(')');
      std::string args = p.substr(2, close - 2);
      auto comma = args.find(',');
      long a = std::stol(args.substr(0, comma));
      long b = std::stol(args.substr(comma + 1));
      int c = 1;
      if (close + 1 < p.size() && p[close + 1] == '^')
        c = std::stoi(p.substr(close + 2));
      up.factors.emplace_back(SiegelIndex(a, b, up.N), c);
      if (neg) pref *= Rat(-1);
    } else {
      pref *= parse_cyclotomic(p);
    }
    (void)negate_next;
  }
  up.prefactor = pref.canonical();
  return up;
}

std::string UnitProduct::str() const {
  std::ostringstream os;
  os << prefactor.str();
  for (auto& [idx, c] : factors) {
    os << " * g(" << idx.a << "," << idx.b << ")";
    if (c != 1) os << "^" << c;
  }
  os << " @ " << N;
  return os.str();
}

Rat ord_at_cusp(const UnitProduct& f, const Cusp& cusp) {
  Mat2 g = cusp_matrix(cusp);
  Rat acc = 0;
  for (auto& [idx, c] : f.factors) {
    long ap = ((idx.a * g.a + idx.b * g.c) % f.N + f.N) % f.N;
    acc += Rat(c) * bernoulli_poly(2, rat(ap, f.N));
  }
  return acc / 2;
}

CuspValue eval_at_cusp(const UnitProduct& f, const Cusp& cusp) {
  CuspValue out;
  Rat ord = ord_at_cusp(f, cusp);
  if (ord > 0) {
    out.kind = CuspValue::Kind::Zero;
    return out;
  }
  if (ord < 0) {
    out.kind = CuspValue::Kind::Pole;
    return out;
  }
  Mat2 g = cusp_matrix(cusp);
  Rat phase_sum = 0;
  Cyclotomic prod(Rat(1));
  for (auto& [idx, c] : f.factors) {
    SiegelPhase ph = transformation_phase(idx, g);
    phase_sum += Rat(c) * ph.r;
    if (ph.target.a_tilde() == 0) {
      Cyclotomic fac = Cyclotomic(Rat(1)) -
                       Cyclotomic::root_of_unity(f.N, ph.target.b);
      prod *= fac.pow(c);
    }
    // a' != 0: factor (1 - 0)^c = 1
  }
  Cyclotomic val = f.prefactor * phase_to_cyclotomic(phase_sum) * prod;
  out.kind = CuspValue::Kind::Value;
  out.value = val.canonical();
  return out;
}

UnitEval eval_on_h(const UnitProduct& f, std::complex<long double> tau, long window) {
  UnitEval out;
  std::complex<long double> acc = f.prefactor.embed();
  for (auto& [idx, c] : f.factors) {
    QSeries s = siegel_qexp(idx, window);
    // coefficient growth of eta-type products is subpolynomial in practice;
    // partition bound ~ C (1+e)^3 is a safe envelope for the window sizes here
    auto ev = s.eval(tau, 16.0L, 3);
    if (!ev.bounded || ev.tail_bound > 1e-18L * std::abs(ev.value)) {
      if (!ev.bounded) out.tail_ok = false;
    }
    std::complex<long double> v = ev.value;
    std::complex<long double> p{1.0L, 0.0L};
    int e = std::abs(c);
    for (int i = 0; i < e; ++i) p *= v;
    acc *= (c >= 0) ? p : std::complex<long double>{1.0L, 0.0L} / p;
  }
  out.value = acc;
  return out;
}

QSeries unit_qexp(const UnitProduct& f, long window) {
  QSeries acc = QSeries::constant(f.prefactor);
  // window accounting: products only shrink validity from the lowest exponents;
  // expand each factor over a window wide enough for the final product
  for (auto& [idx, c] : f.factors) {
    QSeries s = siegel_qexp(idx, window + 4);
    if (c >= 0) {
      for (int i = 0; i < c; ++i) acc = acc * s;
    } else {
      Rat low = *s.lowest_exponent();
      QSeries inv = s.inverse(low + Rat(window + 4));
      for (int i = 0; i < -c; ++i) acc = acc * inv;
    }
  }
  return acc;
}

}  // namespace mm
