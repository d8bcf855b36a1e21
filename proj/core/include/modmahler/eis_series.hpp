// q-expansions of the Eisenstein series G^(k)_{a,b}, the weight-3 basis
// series E_3^{phi,psi,t}, and the shipped newform coefficient tables.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "modmahler/chars.hpp"
#include "modmahler/qseries.hpp"

namespace mm {

struct QuasiModularError : std::domain_error {
  using std::domain_error::domain_error;
};

// G^(k)_{a,b} = a0 + sum_{m,n>=1, m=a, n=b (N)} m^{k-1} q^{mn}
//                  + (-1)^k sum_{m,n>=1, m=-a, n=-b (N)} m^{k-1} q^{mn}.
// The constant term is NOT included here (callers track it separately);
// the returned series carries the sum terms only, truncated at `order`.
// A standalone k=2, a=0 series is quasi-modular and rejected unless
// allow_quasimodular is set (differences of two of them are fine).
QSeries G_qexp(int k, long a, long b, long N, long order,
               bool allow_quasimodular = false);

// E_3^{phi,psi,t} = delta_{N1,1} L(psi,-2) + 2 sum phi(m) psi(n) n^2 q^{t m n};
// phi, psi primitive with phi(-1)psi(-1) = -1.
QSeries E3_qexp(const DirichletChar& phi, const DirichletChar& psi, long t,
                long order);

struct NewformTable {
  std::string label;
  long level = 0;
  int weight = 3;
  std::vector<long long> a;  // a[0] = a_1 = 1
  DirichletChar nebentypus;

  long long an(size_t n) const {
    if (n == 0 || n > a.size()) throw std::out_of_range("NewformTable::an");
    return a[n - 1];
  }
  size_t count() const { return a.size(); }
  // q-expansion of f(shift*tau), integer exponents
  QSeries qexp(long order, long shift = 1) const;
};

// load a shipped table ("f8", "f12", "f16"); throws on unknown label
const NewformTable& newform(const std::string& label);

// data directory resolution (env MODMAHLER_DATA_DIR overrides the build path)
std::string data_dir();

long index_gamma1(long M);
long sturm_bound(int weight, long M);

}  // namespace mm
