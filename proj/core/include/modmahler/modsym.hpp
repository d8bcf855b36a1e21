// Shokurov/Manin symbol combinatorics: decomposition of weighted geodesic
// cycles into Manin symbols, pullback of symbol pair data, and the
// convergence / residue predicates that gate the integral identities.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "modmahler/mat2.hpp"
#include "modmahler/symb.hpp"

namespace mm {

struct WeightPoly {
  long m = 1, n = 0;  // mX + nY
  bool operator==(const WeightPoly& o) const { return m == o.m && n == o.n; }
};

// gamma P for gamma = (a b; c d): P(dX - bY, -cX + aY)
WeightPoly sl2_act(const Mat2& g, const WeightPoly& p);

struct ShokurovTerm {
  Rat c;
  Mat2 g;
  char base = 'X';  // 'X' or 'Y'
  bool operator==(const ShokurovTerm& o) const {
    return c == o.c && g == o.g && base == o.base;
  }
};

struct ManinDecomposition {
  std::vector<ShokurovTerm> terms;
  std::vector<Mat2> segments;   // unimodular path matrices, in path order
  std::vector<Cusp> path_cusps; // cusps visited, in order (incl. endpoints)
};

// P{alpha,beta} as a sum of Manin symbols g_*(X{0,oo}) (Y{0,oo} rewritten
// as -sigma_* X{0,oo} when rewrite_y is set)
ManinDecomposition manin_decompose(const WeightPoly& p, const Cusp& alpha,
                                   const Cusp& beta, bool rewrite_y = true);

struct PhiCombo {
  long N = 1;
  Rat scale{1};  // common scalar prefactor; entries hold the residual data
  std::map<std::pair<Pt, Pt>, Rat> entries;

  void add(Pt u, Pt v, const Rat& c);
  bool operator==(const PhiCombo& o) const;
  // divide out the rational content of the entries into `scale`
  void extract_content();
  std::string str() const;
};

// tensor the weight-0 and weight-1 combos into pair data (content extracted)
PhiCombo make_base_phi(const EisCombo& w0, const EisCombo& w1);

// phi = sum over terms of c * (base | g): entries (u,v) -> (u g, v g)
PhiCombo phi_pullback(const PhiCombo& base, const std::vector<ShokurovTerm>& terms);

struct ConvergenceReport {
  bool x_converges = false;
  bool y_converges = false;
  // numerically-zero log combination that is not structurally zero
  bool structural_warning = false;
};
ConvergenceReport convergence_check(const PhiCombo& phi);

// formal residue expression at a cusp: rational coefficients against the
// basis  (pi^2/N^2) log|1-zeta^b| alpha^2,  (pi^2/N^2) log|1-zeta^b| alpha,
// (pi i/N^2) Zhat(d) alpha   with Zhat(-d) = -Zhat(d) kept opaque
struct ResidueExpr {
  long N = 1;
  std::map<long, Rat> alpha2_log;  // key: canonical b (b ~ -b folded)
  std::map<long, Rat> alpha_log;
  std::map<long, Rat> alpha_zhat;  // key: canonical d, antisymmetric fold

  bool zero() const;
  ResidueExpr& operator+=(const ResidueExpr& o);
  ResidueExpr& scale_by(const Rat& r);
  std::string str() const;
};

ResidueExpr residue_limit(Pt u, Pt v, char fiber, long N);

// Cor. criterion: true iff d is a multiple of b and of b' in Z/N and
// b = ±b' mod gcd(d,N); cross-checked against the symbolic per-matrix scan
bool residue_trivial_check(long b, long bp, long d, long N);

// Stokes corner gate: symbolic vanishing of the residues of the transported
// form at every cusp visited by the decomposition (needed as soon as the
// path has more than one segment)
bool path_residue_gate(const PhiCombo& base, const ManinDecomposition& dec,
                       const WeightPoly& p0, std::string* diag = nullptr);

}  // namespace mm
