#include "modmahler/lfun.hpp"

#include <cmath>
#include <sstream>

namespace mm {

namespace {
const long double kPi = 3.14159265358979323846264338327950288L;
const long double kEulerGamma = 0.57721566490153286060651209008240243L;

long double e1_series(long double x) {
  // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
  long double sum = -kEulerGamma - std::log(x);
  long double term = 1.0L;
  for (int k = 1; k < 60; ++k) {
    term *= -x / k;
    sum -= term / k;
    if (std::abs(term / k) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

long double gamma_cf(long double s, long double x) {
  // Gamma(s,x) = e^{-x} x^s * CF (modified Lentz); good for x > s + 1
  const long double tiny = 1e-300L;
  long double b = x + 1.0L - s;
  long double c = 1.0L / tiny;
  long double d = 1.0L / b;
  long double h = d;
  for (int i = 1; i < 400; ++i) {
    long double an = -i * (i - s);
    b += 2.0L;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0L / d;
    long double del = d * c;
    h *= del;
    if (std::abs(del - 1.0L) < 1e-20L) break;
  }
  return std::exp(-x + s * std::log(x)) * h;
}

long double lower_gamma_series(long double s, long double x) {
  // gamma(s,x) = x^s e^{-x} sum_{n>=0} x^n / (s (s+1) ... (s+n))
  long double ap = s;
  long double sum = 1.0L / s;
  long double del = sum;
  for (int n = 1; n < 400; ++n) {
    ap += 1.0L;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-20L) break;
  }
  return sum * std::exp(-x + s * std::log(x));
}
}  // namespace

long double upper_incomplete_gamma(long double s, long double x) {
  if (x <= 0) throw std::invalid_argument("upper_incomplete_gamma: x must be > 0");
  if (s < 0 || s > 4.5L)
    throw std::invalid_argument("upper_incomplete_gamma: s out of supported range");
  if (s == 0.0L) {
    return (x < 1.5L) ? e1_series(x) : gamma_cf(0.0L, x);
  }
  if (x > s + 1.5L) return gamma_cf(s, x);
  return std::tgammal(s) - lower_gamma_series(s, x);
}

long double hurwitz_zeta(long double s, long double x) {
  if (s == 1.0L) throw std::invalid_argument("hurwitz_zeta: s = 1");
  const int M = 24, J = 14;
  long double sum = 0;
  for (int n = 0; n < M; ++n) sum += std::pow(n + x, -s);
  long double Mx = M + x;
  sum += std::pow(Mx, 1.0L - s) / (s - 1.0L);
  sum += 0.5L * std::pow(Mx, -s);
  // Euler-Maclaurin correction terms
  long double poch = s;  // s (s+1) ... (s + 2j - 2) built incrementally
  long double p = std::pow(Mx, -s - 1.0L);
  for (int j = 1; j <= J; ++j) {
    long double b2j = to_ld(bernoulli_number(2 * j));
    long double fact = 1.0L;
    for (int i = 2; i <= 2 * j; ++i) fact *= i;
    sum += b2j / fact * poch * p;
    // update pochhammer: multiply (s + 2j - 1)(s + 2j)
    poch *= (s + 2 * j - 1) * (s + 2 * j);
    p /= Mx * Mx;
  }
  return sum;
}

std::complex<long double> dirichlet_L_numeric(const DirichletChar& chi, long double s) {
  long m = chi.modulus();
  std::complex<long double> acc = 0;
  for (long a = 1; a <= m; ++a) {
    if (chi.is_zero_at(a)) continue;
    acc += chi.value(a).embed() * hurwitz_zeta(s, static_cast<long double>(a) / m);
  }
  return acc * std::pow(static_cast<long double>(m), -s);
}

std::complex<long double> dirichlet_L_numeric_derivative(const DirichletChar& chi,
                                                         long double s) {
  // five-point stencil
  const long double h = 1.0L / 1024;
  auto f = [&](long double t) { return dirichlet_L_numeric(chi, t); };
  return (f(s - 2 * h) - 8.0L * f(s - h) + 8.0L * f(s + h) - f(s + 2 * h)) /
         (12.0L * h);
}

long double zeta3() {
  // Apery: zeta(3) = (5/2) sum_{n>=1} (-1)^{n-1} / (n^3 binom(2n,n))
  long double sum = 0;
  long double binom = 2;  // binom(2,1)
  for (int n = 1; n <= 40; ++n) {
    if (n > 1) {
      // binom(2n,n) = binom(2n-2,n-1) * (2n-1)(2n) / n^2
      binom *= (2.0L * n - 1) * (2.0L * n) / (static_cast<long double>(n) * n);
    }
    long double term = 1.0L / (static_cast<long double>(n) * n * n * binom);
    sum += (n % 2 == 1) ? term : -term;
  }
  return 2.5L * sum;
}

long double zeta3_reference() { return 1.20205690315959428539973816151144999L; }

long double zeta_prime_minus2() { return -zeta3() / (4.0L * kPi * kPi); }

namespace {
std::complex<long double> qexp_eval(const NewformTable& f,
                                    std::complex<long double> tau) {
  std::complex<long double> itau(-2.0L * kPi * tau.imag(), 2.0L * kPi * tau.real());
  std::complex<long double> acc = 0;
  for (size_t n = 1; n <= f.count(); ++n) {
    if (f.an(n) == 0) continue;
    acc += std::exp(itau * static_cast<long double>(n)) *
           static_cast<long double>(f.an(n));
  }
  return acc;
}
}  // namespace

int fricke_sign(const NewformTable& f, long N) {
  long double rn = std::sqrt(static_cast<long double>(N));
  auto wf = [&](std::complex<long double> tau) {
    std::complex<long double> arg = -1.0L / (static_cast<long double>(N) * tau);
    std::complex<long double> st = rn * tau;
    return std::complex<long double>(0, -1) / (st * st * st) * qexp_eval(f, arg);
  };
  int sign = 0;
  for (long double c : {1.35L, 0.8L}) {
    std::complex<long double> tau(0.0L, c / rn);
    std::complex<long double> ratio = wf(tau) / qexp_eval(f, tau);
    long double err_p = std::abs(ratio - 1.0L), err_m = std::abs(ratio + 1.0L);
    int s = 0;
    if (err_p < 0.1L) s = 1;
    if (err_m < 0.1L) s = -1;
    if (s == 0)
      throw std::runtime_error("fricke_sign: ratio not near ±1 (convention or table error)");
    if (sign == 0) sign = s;
    if (sign != s)
      throw std::runtime_error("fricke_sign: inconsistent sign between sample points");
  }
  return sign;
}

long double lambda_cusp(const NewformTable& f, long N, long double s, int eps,
                        long double precision) {
  if (eps != 1 && eps != -1) throw std::invalid_argument("lambda_cusp: eps must be ±1");
  long double c = 2.0L * kPi / std::sqrt(static_cast<long double>(N));
  long double acc = 0;
  size_t M = f.count();
  for (size_t n = 1; n <= M; ++n) {
    long double x = c * n;
    long double term = 0;
    if (f.an(n) != 0) {
      term = static_cast<long double>(f.an(n)) *
             (std::pow(x, -s) * upper_incomplete_gamma(s, x) +
              eps * std::pow(x, s - 3.0L) * upper_incomplete_gamma(3.0L - s, x));
      acc += term;
    }
    // rigorous tail bound: |a_m| <= 2 m^{3/2}, Gamma(s,x) <= 2 x^{s-1} e^{-x}
    if (n >= 8 && x > 6.0L) {
      long double r = std::exp(-c + 1.0L / (2.0L * n));
      long double tail = (8.0L / c) * std::sqrt(static_cast<long double>(n)) *
                         std::exp(-x) * r / (1.0L - r);
      if (tail < precision) return acc;
    }
  }
  throw std::runtime_error("lambda_cusp: requested precision unreachable with stored coefficients");
}

long double ClosedFormValue::value() const {
  long double v = to_ld(c_one);
  for (auto& [p, c] : c_log_prime)
    v += to_ld(c) * std::log(static_cast<long double>(p));
  v += to_ld(c_log_pi) * std::log(kPi);
  v += to_ld(c_zeta3_over_pi2) * zeta3() / (kPi * kPi);
  v += numeric_extra;
  return v;
}

std::string ClosedFormValue::str() const {
  std::ostringstream os;
  bool any = false;
  if (c_one != 0) {
    os << c_one.get_str();
    any = true;
  }
  for (auto& [p, c] : c_log_prime) {
    if (c == 0) continue;
    if (any) os << " + ";
    os << c.get_str() << "*log(" << p << ")";
    any = true;
  }
  if (c_log_pi != 0) {
    if (any) os << " + ";
    os << c_log_pi.get_str() << "*log(pi)";
    any = true;
  }
  if (c_zeta3_over_pi2 != 0) {
    if (any) os << " + ";
    os << c_zeta3_over_pi2.get_str() << "*zeta(3)/pi^2";
    any = true;
  }
  if (!exact) {
    if (any) os << " + ";
    os << "(numeric " << static_cast<double>(numeric_extra) << ")";
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

namespace {

// prime factorization exponents of t as log-symbol contributions
std::map<long, Rat> log_of_integer(long t) {
  std::map<long, Rat> out;
  long x = t;
  for (long p = 2; p * p <= x; ++p) {
    while (x % p == 0) {
      out[p] += 1;
      x /= p;
    }
  }
  if (x > 1) out[x] += 1;
  return out;
}

struct EisGroup {
  DirichletChar phi, psi;
  std::vector<std::pair<Cyclotomic, long>> ct;  // (coefficient, t)
};

}  // namespace

ClosedFormValue lambda_eis_reg(const std::vector<EisTerm>& terms, long N) {
  // group by (phi, psi)
  std::vector<EisGroup> groups;
  for (auto& term : terms) {
    bool found = false;
    for (auto& g : groups) {
      if (g.phi.same_character(term.phi) && g.psi.same_character(term.psi)) {
        g.ct.push_back({term.coeff, term.t});
        found = true;
        break;
      }
    }
    if (!found) groups.push_back({term.phi, term.psi, {{term.coeff, term.t}}});
  }

  // gate: h(0) = sum_g 2 L(phi,0) L(psi,-2) T_g(0) must vanish exactly
  Cyclotomic h0;
  for (auto& g : groups) {
    Cyclotomic T0;
    for (auto& [c, t] : g.ct) T0 += c;
    h0 += Rat(2) * dirichlet_L_nonpositive(g.phi, 1) *
          dirichlet_L_nonpositive(g.psi, 3) * T0;
  }
  if (!h0.is_zero())
    throw PoleError("lambda_eis_reg: Lambda* has a pole; case ill-posed (h(0) = " +
                    h0.str() + ")");

  ClosedFormValue out;
  // accumulate symbol coefficients as cyclotomics, convert at the end
  Cyclotomic acc_one, acc_zeta, acc_logpi;
  std::map<long, Cyclotomic> acc_logs;
  long double numeric_extra = 0;
  bool exact = true;

  for (auto& g : groups) {
    Cyclotomic L_phi0 = dirichlet_L_nonpositive(g.phi, 1);
    Cyclotomic L_psi2 = dirichlet_L_nonpositive(g.psi, 3);
    Cyclotomic T0;
    for (auto& [c, t] : g.ct) T0 += c;

    // term 2 L'(phi,0) L(psi,-2) T(0)
    Cyclotomic m1 = Rat(2) * L_psi2 * T0;
    if (!m1.is_zero()) {
      if (g.phi.trivial()) {
        // zeta'(0) = -(1/2) log(2 pi)
        acc_logs[2] += m1 * rat(-1, 2);
        acc_logpi += m1 * rat(-1, 2);
      } else {
        exact = false;
        numeric_extra +=
            (m1.embed() * dirichlet_L_numeric_derivative(g.phi, 0.0L)).real();
      }
    }
    // term 2 L(phi,0) L'(psi,-2) T(0)
    Cyclotomic m2 = Rat(2) * L_phi0 * T0;
    if (!m2.is_zero()) {
      if (g.psi.trivial()) {
        // zeta'(-2) = -zeta(3)/(4 pi^2)
        acc_zeta += m2 * rat(-1, 4);
      } else {
        exact = false;
        numeric_extra +=
            (m2.embed() * dirichlet_L_numeric_derivative(g.psi, -2.0L)).real();
      }
    }
    // term 2 L(phi,0) L(psi,-2) T'(0), T'(0) = -sum c_t log t
    Cyclotomic m3 = Rat(2) * L_phi0 * L_psi2;
    if (!m3.is_zero()) {
      for (auto& [c, t] : g.ct) {
        if (t == 1) continue;
        Cyclotomic w = m3 * c * Rat(-1);
        for (auto& [p, e] : log_of_integer(t)) acc_logs[p] += w * e;
      }
    }
  }
  (void)N;  // the N^{s/2} factor multiplies h(0) = 0 and drops out

  auto to_rat = [](const Cyclotomic& c) -> Rat {
    Cyclotomic cc = c.canonical();
    if (!cc.is_rational())
      throw std::logic_error("lambda_eis_reg: non-real symbolic coefficient");
    return cc.rational_value();
  };
  out.c_one = to_rat(acc_one);
  out.c_zeta3_over_pi2 = to_rat(acc_zeta);
  out.c_log_pi = to_rat(acc_logpi);
  for (auto& [p, c] : acc_logs) {
    Rat r = to_rat(c);
    if (r != 0) out.c_log_prime[p] = r;
  }
  out.exact = exact;
  out.numeric_extra = numeric_extra;
  return out;
}

long double lambda_eis_reg_numeric(const std::vector<EisTerm>& terms, long N) {
  // h(s) = sum_i 2 c_i t_i^{-s} N^{s/2} (2pi)^{-s} L(phi_i, s) L(psi_i, s-2);
  // the regularized value is h'(0) once h(0) = 0
  auto h = [&](long double s) -> long double {
    std::complex<long double> acc = 0;
    for (auto& term : terms) {
      std::complex<long double> v = term.coeff.embed();
      v *= std::pow(static_cast<long double>(term.t), -s);
      v *= std::pow(static_cast<long double>(N), s / 2);
      v *= std::pow(2.0L * kPi, -s);
      v *= dirichlet_L_numeric(term.phi, s);
      v *= dirichlet_L_numeric(term.psi, s - 2.0L);
      acc += v;
    }
    return 2.0L * acc.real();
  };
  const long double step = 1.0L / 512;
  return (h(-2 * step) - 8.0L * h(-step) + 8.0L * h(step) - h(2 * step)) /
         (12.0L * step);
}

}  // namespace mm
