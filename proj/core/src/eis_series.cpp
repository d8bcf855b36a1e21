#include "modmahler/eis_series.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#ifndef MODMAHLER_SOURCE_DATA_DIR
#define MODMAHLER_SOURCE_DATA_DIR ""
#endif

namespace mm {

QSeries G_qexp(int k, long a, long b, long N, long order, bool allow_quasimodular) {
  if (k < 1 || k > 3) throw std::invalid_argument("G_qexp: k must be 1, 2 or 3");
  if (N < 1) throw std::invalid_argument("G_qexp: bad level");
  long am = ((a % N) + N) % N;
  long bm = ((b % N) + N) % N;
  if (k == 2 && am == 0 && !allow_quasimodular)
    throw QuasiModularError("G^(2)_{0,b} is quasi-modular; difference required");

  QSeries s;
  std::map<long, Rat> acc;
  auto add_branch = [&](long ar, long br, int sign) {
    long m0 = (ar % N + N) % N;
    long n0 = (br % N + N) % N;
    if (m0 == 0) m0 = N;
    if (n0 == 0) n0 = N;
    for (long m = m0; m <= order; m += N) {
      Rat w = pow_rat(Rat(m), k - 1) * sign;
      for (long n = n0; m * n <= order; n += N) acc[m * n] += w;
    }
  };
  add_branch(am, bm, 1);
  add_branch(-am, -bm, (k % 2 == 0) ? 1 : -1);
  for (auto& [e, c] : acc)
    if (c != 0) s.set_coeff(Rat(e), Cyclotomic(c));
  s.set_truncation(Rat(order + 1));
  return s;
}

QSeries E3_qexp(const DirichletChar& phi, const DirichletChar& psi, long t,
                long order) {
  if (!phi.primitive() || !psi.primitive())
    throw std::invalid_argument("E3_qexp: characters must be primitive");
  if (phi.parity() * psi.parity() != -1)
    throw std::invalid_argument("E3_qexp: parity condition phi(-1)psi(-1) = -1 violated");
  if (t < 1) throw std::invalid_argument("E3_qexp: t must be >= 1");

  QSeries s;
  if (phi.modulus() == 1) {
    Cyclotomic c0 = dirichlet_L_nonpositive(psi, 3);  // L(psi, -2)
    if (!c0.is_zero()) s.set_coeff(Rat(0), c0);
  }
  std::map<long, Cyclotomic> acc;
  for (long m = 1; t * m <= order; ++m) {
    if (phi.is_zero_at(m)) continue;
    Cyclotomic pm = phi.value(m);
    for (long n = 1; t * m * n <= order; ++n) {
      if (psi.is_zero_at(n)) continue;
      Cyclotomic term = pm * psi.value(n);
      term *= Rat(2 * n * n);
      auto it = acc.find(t * m * n);
      if (it == acc.end())
        acc[t * m * n] = term;
      else
        it->second += term;
    }
  }
  for (auto& [e, c] : acc)
    if (!c.is_zero()) s.set_coeff(Rat(e), c);
  s.set_truncation(Rat(order + 1));
  return s;
}

QSeries NewformTable::qexp(long order, long shift) const {
  QSeries s;
  for (size_t n = 1; n <= a.size(); ++n) {
    long e = static_cast<long>(n) * shift;
    if (e > order) break;
    if (a[n - 1] != 0) s.set_coeff(Rat(e), Cyclotomic(Rat(static_cast<long>(a[n - 1]))));
  }
  long have = static_cast<long>(a.size()) * shift;
  s.set_truncation(Rat(std::min(order, have) + 1));
  return s;
}

std::string data_dir() {
  if (const char* env = std::getenv("MODMAHLER_DATA_DIR")) return env;
  return MODMAHLER_SOURCE_DATA_DIR;
}

namespace {

NewformTable load_table(const std::string& label) {
  std::string path = data_dir() + "/newforms/" + label + ".txt";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("newform table not found: " + path);
  NewformTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream head(line);
    head >> t.label >> t.level >> t.weight;
    break;
  }
  if (t.label != label) throw std::runtime_error("newform table label mismatch in " + path);
  long long v;
  while (in >> v) t.a.push_back(v);
  if (t.a.empty() || t.a[0] != 1)
    throw std::runtime_error("newform table not normalized: " + path);

  // nebentypus: the odd character of weight-3 newforms at these levels
  if (label == "f8")
    t.nebentypus = DirichletChar::by_name("chi8o");
  else if (label == "f12")
    t.nebentypus = DirichletChar::by_name("chi3").induced(12);
  else if (label == "f16")
    t.nebentypus = DirichletChar::by_name("chi4").induced(16);
  else
    throw std::runtime_error("unknown newform label: " + label);
  return t;
}

}  // namespace

const NewformTable& newform(const std::string& label) {
  static std::map<std::string, NewformTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, load_table(label)).first;
  return it->second;
}

long index_gamma1(long M) {
  if (M == 1) return 1;
  if (M == 2) return 3;
  long idx = M * M;
  long t = M;
  for (long p = 2; p * p <= t; ++p) {
    if (t % p == 0) {
      idx = idx / (p * p) * (p * p - 1);
      while (t % p == 0) t /= p;
    }
  }
  if (t > 1) idx = idx / (t * t) * (t * t - 1);
  return idx;
}

long sturm_bound(int weight, long M) {
  long idx = index_gamma1(M);
  return (weight * idx + 11) / 12;  // ceil(k * index / 12)
}

}  // namespace mm
