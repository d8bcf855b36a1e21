#include "modmahler/mahler.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace mm {

namespace {

const long double kPi = 3.14159265358979323846264338327950288L;
using Cplx = std::complex<double>;

// polynomial in one variable with coefficients depending on the other two:
// prepared monomial lists per degree for fast node evaluation
struct FiberedPoly {
  int var;                     // distinguished variable
  int v0, v1;                  // the two torus variables
  int degree;                  // after clearing the lowest power
  struct Mono {
    int e0, e1;
    double c;
  };
  std::vector<std::vector<Mono>> coeffs;  // per degree 0..degree
  int min0, max0, min1, max1;             // exponent ranges of the torus vars

  explicit FiberedPoly(const LaurentPoly3& p, int var_) : var(var_) {
    v0 = (var_ == 0) ? 1 : 0;
    v1 = (var_ == 2) ? 1 : 2;
    if (var_ == 0) {
      v0 = 1;
      v1 = 2;
    } else if (var_ == 1) {
      v0 = 0;
      v1 = 2;
    } else {
      v0 = 0;
      v1 = 1;
    }
    int lo = p.min_degree(var_), hi = p.max_degree(var_);
    degree = hi - lo;
    coeffs.assign(degree + 1, {});
    min0 = max0 = min1 = max1 = 0;
    for (auto& [e, c] : p.terms()) {
      Mono m{e[v0], e[v1], static_cast<double>(to_ld(c))};
      coeffs[e[var_] - lo].push_back(m);
      min0 = std::min(min0, m.e0);
      max0 = std::max(max0, m.e0);
      min1 = std::min(min1, m.e1);
      max1 = std::max(max1, m.e1);
    }
  }
};

// roots of sum c_d z^d (degree >= 1, c[degree] != 0)
void poly_roots(const std::vector<Cplx>& c, std::vector<Cplx>* roots) {
  roots->clear();
  int d = static_cast<int>(c.size()) - 1;
  while (d > 0 && std::abs(c[d]) == 0.0) --d;
  if (d <= 0) return;
  if (d == 1) {
    roots->push_back(-c[0] / c[1]);
    return;
  }
  if (d == 2) {
    Cplx a = c[2], b = c[1], cc = c[0];
    Cplx disc = std::sqrt(b * b - 4.0 * a * cc);
    // stable form: avoid cancellation in the small root
    Cplx q = (std::real(std::conj(b) * disc) >= 0) ? -0.5 * (b + disc)
                                                   : -0.5 * (b - disc);
    if (std::abs(q) > 0) {
      roots->push_back(q / a);
      roots->push_back(cc / q);
    } else {
      roots->push_back(Cplx(0, 0));
      roots->push_back(Cplx(0, 0));
    }
    return;
  }
  // companion matrix of the monic polynomial
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) m(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  for (int i = 0; i < d; ++i) {
    Cplx z = es.eigenvalues()(i);
    // one Newton polish step
    Cplx f = c[d], fp = 0.0;
    for (int j = d - 1; j >= 0; --j) {
      fp = fp * z + f;
      f = f * z + c[j];
    }
    if (std::abs(fp) > 0) {
      Cplx dz = f / fp;
      if (std::abs(dz) < 0.5) z -= dz;
    }
    roots->push_back(z);
  }
}

struct NodeResult {
  long double sum = 0;
  long near_unit = 0;
};

// sum of log^+ |roots| of P(., ., z) at the torus node (x, y), plus
// log | leading coefficient | (Jensen integrand before subtracting m(P*))
long double node_value(const FiberedPoly& fp, Cplx x, Cplx y, long* near_unit,
                       bool include_lead) {
  static thread_local std::vector<Cplx> c, roots;
  c.assign(fp.degree + 1, Cplx(0, 0));
  // powers of x and y over the needed ranges
  for (int d = 0; d <= fp.degree; ++d) {
    Cplx acc(0, 0);
    for (auto& m : fp.coeffs[d]) {
      Cplx v = m.c;
      v *= std::pow(x, m.e0);
      v *= std::pow(y, m.e1);
      acc += v;
    }
    c[d] = acc;
  }
  long double out = 0;
  if (include_lead) {
    double la = std::abs(c[fp.degree]);
    if (la > 0) out += std::log(static_cast<long double>(la));
  }
  poly_roots(c, &roots);
  for (auto& z : roots) {
    double az = std::abs(z);
    if (std::abs(az - 1.0) < 1e-10) {
      ++*near_unit;
      continue;
    }
    if (az > 1.0) out += std::log(static_cast<long double>(az));
  }
  return out;
}

// power cache for a torus grid: exp(i k theta_j)
struct PowTable {
  std::vector<Cplx> unit;  // e^{i theta_j}
  explicit PowTable(int n, long double offset) {
    unit.resize(n);
    for (int j = 0; j < n; ++j) {
      long double t = 2.0L * kPi * (j + offset) / n;
      unit[j] = Cplx(static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t)));
    }
  }
};

long double grid_average(const FiberedPoly& fp, int n, long double offset,
                         int threads, long* near_unit, bool include_lead) {
  PowTable pt(n, offset);
  int nthreads = threads > 0 ? threads
                             : static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
  std::vector<long double> row_sums(n, 0.0L);
  std::vector<long> row_near(n, 0);
  auto work = [&](int t0) {
    for (int i = t0; i < n; i += nthreads) {
      Cplx x = pt.unit[i];
      long double acc = 0, comp = 0;
      long nu = 0;
      for (int j = 0; j < n; ++j) {
        long double v = node_value(fp, x, pt.unit[j], &nu, include_lead);
        // Kahan
        long double yk = v - comp;
        long double tk = acc + yk;
        comp = (tk - acc) - yk;
        acc = tk;
      }
      row_sums[i] = acc;
      row_near[i] = nu;
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  long double total = 0, comp = 0;
  for (int i = 0; i < n; ++i) {
    long double yk = row_sums[i] - comp;
    long double tk = total + yk;
    comp = (tk - total) - yk;
    total = tk;
    *near_unit += row_near[i];
  }
  return total / (static_cast<long double>(n) * n);
}

// Richardson extrapolation with empirically fitted order
void richardson(const std::vector<long double>& v, long double* value,
                long double* error) {
  size_t L = v.size();
  if (L == 1) {
    *value = v[0];
    *error = std::abs(v[0]) * 1e-3L;
    return;
  }
  long double d1 = v[L - 1] - v[L - 2];
  if (L == 2 || d1 == 0.0L) {
    *value = v[L - 1];
    *error = std::abs(d1);
    return;
  }
  long double d0 = v[L - 2] - v[L - 3];
  long double p = 2.0L;
  if (d0 != 0.0L && d1 != 0.0L && (d0 > 0) == (d1 > 0)) {
    long double ratio = d0 / d1;
    if (ratio > 1.01L) p = std::log2(ratio);
  }
  p = std::clamp(p, 0.5L, 8.0L);
  long double extrap = v[L - 1] + d1 / (std::pow(2.0L, p) - 1.0L);
  *value = extrap;
  *error = std::abs(extrap - v[L - 1]) * 1.5L + 1e-18L;
}

}  // namespace

long double mahler_measure_1var(const LaurentPoly3& p, int var) {
  if (p.empty()) throw std::invalid_argument("mahler_measure_1var: zero polynomial");
  auto cs = p.coefficients_in(var);
  std::vector<Cplx> c;
  for (auto& cp : cs) {
    if (cp.terms().size() > 1)
      throw std::invalid_argument("mahler_measure_1var: polynomial has other variables");
    Cplx v(0, 0);
    if (!cp.empty()) {
      auto& [e, r] = *cp.terms().begin();
      if (e != LaurentPoly3::Expo{0, 0, 0})
        throw std::invalid_argument("mahler_measure_1var: polynomial has other variables");
      v = Cplx(static_cast<double>(to_ld(r)), 0);
    }
    c.push_back(v);
  }
  while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
  long double out = std::log(static_cast<long double>(std::abs(c.back())));
  std::vector<Cplx> roots;
  poly_roots(c, &roots);
  for (auto& z : roots) {
    double az = std::abs(z);
    if (az > 1.0) out += std::log(static_cast<long double>(az));
  }
  return out;
}

namespace {

int count_vars(const LaurentPoly3& p, std::array<bool, 3>* used) {
  used->fill(false);
  for (auto& [e, c] : p.terms())
    for (int i = 0; i < 3; ++i)
      if (e[i] != 0) (*used)[i] = true;
  int n = 0;
  for (bool b : *used) n += b;
  return n;
}

// Mahler measure of a polynomial in at most 2 variables (exact recursion base)
long double mahler_measure_2var(const LaurentPoly3& p, const TorusQuadrature& quad);

}  // namespace

MahlerEstimate mahler_measure(const LaurentPoly3& p, const TorusQuadrature& quad,
                              int var) {
  auto t0 = std::chrono::steady_clock::now();
  if (p.empty()) throw std::invalid_argument("mahler_measure: zero polynomial");

  std::array<bool, 3> used{};
  int nv = count_vars(p, &used);
  MahlerEstimate est;
  if (nv == 0) {
    est.value = std::log(std::abs(to_ld(p.terms().begin()->second)));
    est.error = 0;
    return est;
  }
  if (!used[var]) {
    // pick the last variable actually present
    for (int i = 2; i >= 0; --i)
      if (used[i]) {
        var = i;
        break;
      }
  }
  if (nv == 1) {
    est.value = mahler_measure_1var(p, var);
    est.error = 0;
    return est;
  }

  FiberedPoly fp(p, var);
  // m(P*) for the leading coefficient (recursively, at most 2 variables)
  LaurentPoly3 lead = p.leading_coefficient(var);
  long double m_star = mahler_measure_2var(lead, quad);

  long double nodes = 0;
  for (int l = 0; l < quad.levels; ++l) {
    int n = quad.base_n << l;
    long near_unit = 0;
    long double avg = grid_average(fp, n, quad.offset, quad.threads, &near_unit, false);
    est.level_values.push_back(avg + m_star);
    est.near_unit_roots += near_unit;
    nodes += static_cast<long double>(n) * n;
  }
  richardson(est.level_values, &est.value, &est.error);
  est.nodes = static_cast<std::size_t>(nodes);
  est.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return est;
}

namespace {

long double mahler_measure_2var(const LaurentPoly3& p, const TorusQuadrature& quad) {
  std::array<bool, 3> used{};
  int nv = count_vars(p, &used);
  if (nv == 0) {
    if (p.empty()) throw std::invalid_argument("mahler: zero leading coefficient");
    return std::log(std::abs(to_ld(p.terms().begin()->second)));
  }
  int var = 2;
  for (int i = 2; i >= 0; --i)
    if (used[i]) {
      var = i;
      break;
    }
  if (nv == 1) return mahler_measure_1var(p, var);

  // genuinely two variables: 1D Jensen over the other one
  int other = -1;
  for (int i = 0; i < 3; ++i)
    if (used[i] && i != var) other = i;
  FiberedPoly fp(p, var);
  (void)other;
  std::vector<long double> levels;
  for (int l = 0; l < quad.levels + 2; ++l) {
    int n = (quad.base_n << l);
    // 1D average over the `other` circle; reuse the 2D machinery with a
    // single row by fixing y... simpler: direct loop
    PowTable pt(n, quad.offset);
    long double acc = 0, comp = 0;
    long nu = 0;
    for (int j = 0; j < n; ++j) {
      // collapse: the fibered poly has exactly one active torus variable;
      // pass the same unit for both slots (the inactive one has exponent 0)
      long double v = node_value(fp, pt.unit[j], pt.unit[j], &nu, true);
      long double yk = v - comp;
      long double tk = acc + yk;
      comp = (tk - acc) - yk;
      acc = tk;
    }
    levels.push_back(acc / n);
  }
  long double value, error;
  richardson(levels, &value, &error);
  return value;
}

}  // namespace

MahlerEstimate mahler_montecarlo(const LaurentPoly3& p, std::size_t samples,
                                 std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  long double sum = 0, sum2 = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    long double a0 = 2.0L * kPi * uni(rng);
    long double a1 = 2.0L * kPi * uni(rng);
    long double a2 = 2.0L * kPi * uni(rng);
    auto E = [](long double t) {
      return LaurentPoly3::Cplx(std::cos(t), std::sin(t));
    };
    long double av = std::abs(p.eval(E(a0), E(a1), E(a2)));
    if (av <= 0) continue;  // measure-zero singular hit
    long double v = std::log(av);
    sum += v;
    sum2 += v * v;
    ++used;
  }
  MahlerEstimate est;
  est.value = sum / used;
  long double var = (sum2 / used) - est.value * est.value;
  est.error = std::sqrt(std::max(var, 0.0L) / used);  // standard error
  est.nodes = used;
  est.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return est;
}

DeningerReport deninger_fiber_diagnostics(int grid) {
  DeningerReport rep;
  LaurentPoly3 p = LaurentPoly3::parse(
      "X + X^-1 + Y + Y^-1 + Z + Z^-1 - 2");
  rep.z_min = 1e30L;
  rep.z_max = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      long double phi = 2.0L * kPi * (i + 0.37L) / grid;
      long double psi = 2.0L * kPi * (j + 0.61L) / grid;
      long double w = 1.0L - std::cos(phi) - std::cos(psi);
      if (w <= 1.0L) continue;  // outside the region cos phi + cos psi < 0
      long double z = w + std::sqrt(w * w - 1.0L);
      rep.z_min = std::min(rep.z_min, z);
      rep.z_max = std::max(rep.z_max, z);
      auto E = [](long double t) {
        return LaurentPoly3::Cplx(std::cos(t), std::sin(t));
      };
      long double resid = std::abs(p.eval(E(phi), E(psi), LaurentPoly3::Cplx(z, 0)));
      rep.max_poly_residual = std::max(rep.max_poly_residual, resid);
      long double fib =
          std::abs(std::cos(phi) + std::cos(psi) - (1.0L - (z + 1.0L / z) / 2.0L));
      rep.max_fibre_residual = std::max(rep.max_fibre_residual, fib);
    }
  }
  long double top = 3.0L + 2.0L * std::sqrt(2.0L);
  rep.pass = rep.max_poly_residual < 1e-12L && rep.max_fibre_residual < 1e-12L &&
             rep.z_min > 1.0L && rep.z_max <= top + 1e-12L;
  return rep;
}

}  // namespace mm
