// The Rogers-Zudilin right-hand side: map symbol pair data to a weight-3
// q-expansion (a combination of G^(2) G^(1) products), rescale, and identify
// it in M_3(Gamma_1(M)) as newform + Eisenstein combination. Unknown constant
// terms a0(G^(k)_{0,b}) enter the identification as extra linear unknowns.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modmahler/eis_series.hpp"
#include "modmahler/modsym.hpp"

namespace mm {

using GIdx = std::array<long, 2>;  // (first, second) index of a G-series

struct RZProduct {
  long N = 1;
  Rat scale{1};  // carried over from the PhiCombo
  // ((d,a)-side weight-2 index, (b,-c)-side weight-1 index) -> coefficient;
  // both indices canonical under (x,y) ~ (-x,-y) with the (-1)^k sign folded
  std::map<std::pair<GIdx, GIdx>, Rat> terms;

  bool operator==(const RZProduct& o) const {
    return N == o.N && scale == o.scale && terms == o.terms;
  }
  std::string str() const;
};

struct UnbalancedFamilyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// phi entry [(a,b),(c,d)] -> G^(2)_{d,a} G^(1)_{b,-c} - G^(2)_{d,-a} G^(1)_{b,c};
// d = 0 entries must come in (b,c)-families with vanishing coefficient sum
RZProduct phi_to_F(const PhiCombo& phi);

// opaque constant-term symbol a0(G^(k)_{0,y}), canonical y in [1, N/2]
struct A0Symbol {
  int k;
  long y;
  bool operator<(const A0Symbol& o) const { return std::tie(k, y) < std::tie(o.k, o.y); }
  bool operator==(const A0Symbol& o) const { return k == o.k && y == o.y; }
  std::string str() const {
    return "a0(G" + std::to_string(k) + "_{0," + std::to_string(y) + "})";
  }
};

struct SeriesWithSymbols {
  QSeries base;
  std::map<A0Symbol, QSeries> lin;
  std::map<std::pair<A0Symbol, A0Symbol>, Rat> quad;  // q^0 contributions only
};

SeriesWithSymbols rz_expand(const RZProduct& p, long order);

struct EisBasisElement {
  DirichletChar phi, psi;
  long t = 1;
  int combo = 0;  // 0 plain (real pair), 1 Re-combination, 2 Im-combination
  std::string label() const;
  QSeries series(long order) const;  // exact, rational coefficients
};

std::vector<EisBasisElement> enumerate_eis_basis(long M);

struct CuspBasisElement {
  std::string label;  // "f8", "f8@2", ...
  const NewformTable* table = nullptr;
  long shift = 1;
};

std::vector<CuspBasisElement> enumerate_cusp_basis(long M);

struct FormIdentification {
  bool identified = false;
  long target_level = 0;
  Rat rescale{1};
  std::map<std::string, Rat> cusp;                     // label -> coefficient
  std::vector<std::pair<Rat, EisBasisElement>> eis;    // nonzero only
  std::map<A0Symbol, Rat> symbols;                     // resolved constants
  bool constant_consistent = false;
  std::string diagnostic;
  long rows_used = 0;
};

// identify scale^{-1} * series(p) rescaled by t inside M_3(Gamma_1(M));
// extra_rows > 0 re-runs with more coefficients (stability checks)
FormIdentification expand_and_identify(const RZProduct& p, const Rat& t, long M,
                                       long extra_rows = 0);

// Gamma(4) -> Gamma(8) degeneracy pullback tau -> (tau+1)/2 on symbol data:
// weight-0 indices map with multiplicity 2 to {(a', a'+2b) : a' = a mod 4},
// weight-1 with multiplicity 4, same index rule
EisCombo level_degeneracy_pullback(const EisCombo& combo);

}  // namespace mm
