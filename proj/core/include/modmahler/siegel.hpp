// Siegel units g_{a,b}: q-expansions, SL2(Z) transformation phases, order
// and value at cusps, and products of Siegel units (modular units).
#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "modmahler/mat2.hpp"
#include "modmahler/qseries.hpp"

namespace mm {

struct SiegelIndex {
  long a = 0, b = 0;
  long N = 1;
  SiegelIndex() = default;
  SiegelIndex(long a_, long b_, long N_) : a(((a_ % N_) + N_) % N_), b(((b_ % N_) + N_) % N_), N(N_) {
    if (a == 0 && b == 0) throw std::invalid_argument("Siegel index (0,0) is not allowed");
  }
  // representative of a in [0, N)
  long a_tilde() const { return a; }
};

struct Cusp {
  long num = 1, den = 0;  // reduced, den >= 0; infinity = 1/0
  Cusp() = default;
  Cusp(long n, long d);
  static Cusp infinity() { return Cusp(); }
  static Cusp parse(const std::string& s);
  bool is_infinity() const { return den == 0; }
  bool operator==(const Cusp& o) const { return num == o.num && den == o.den; }
  std::string str() const;
};

// q-expansion of g_{a,b}; coefficients exact up to exponent lowest + window
QSeries siegel_qexp(const SiegelIndex& idx, long window = 64);

// gamma* g_{a,b} = exp(i pi r) g_{(a,b) gamma}; r exact rational mod 2
struct SiegelPhase {
  Rat r;
  SiegelIndex target;
};
SiegelPhase transformation_phase(const SiegelIndex& idx, const Mat2& gamma);

struct UnitProduct {
  Cyclotomic prefactor{Rat(1)};
  long N = 1;
  std::vector<std::pair<SiegelIndex, int>> factors;

  // format: "pref * g(a,b)^c * ... @ N"   (pref optional)
  static UnitProduct parse(const std::string& text);
  std::string str() const;
};

// ord_{cusp} F = (1/2) sum_i c_i B2(a'_i / N); independent of the chosen lift
Rat ord_at_cusp(const UnitProduct& f, const Cusp& cusp);

struct CuspValue {
  enum class Kind { Value, Zero, Pole } kind = Kind::Value;
  Cyclotomic value;  // meaningful for Kind::Value only
};
CuspValue eval_at_cusp(const UnitProduct& f, const Cusp& cusp);

struct UnitEval {
  std::complex<long double> value{0, 0};
  bool tail_ok = true;
};
UnitEval eval_on_h(const UnitProduct& f, std::complex<long double> tau,
                   long window = 64);

// q-expansion of the full product (prefactor included); negative exponents
// use exact series inversion
QSeries unit_qexp(const UnitProduct& f, long window = 64);

// an SL2(Z) matrix whose first column is (num, den) — maps infinity to the cusp
Mat2 cusp_matrix(const Cusp& cusp);

}  // namespace mm
