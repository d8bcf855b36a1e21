// Numerical Mahler measures of Laurent polynomials via iterated Jensen's
// formula on the torus: roots in the distinguished variable by companion
// matrix, periodic trapezoid quadrature with Richardson refinement, plus a
// Monte Carlo cross-check and the P2 Deninger-fibration diagnostics.
#pragma once

#include <cstdint>

#include "modmahler/laurent.hpp"

namespace mm {

struct TorusQuadrature {
  int base_n = 128;        // coarsest grid points per angle
  int levels = 4;          // dyadic refinements
  long double offset = 0.5L;  // half-cell offset, keeps nodes off singular sets
  int threads = 0;         // 0 = hardware concurrency
};

struct MahlerEstimate {
  long double value = 0;
  long double error = 0;  // Richardson-based (empirical)
  std::size_t nodes = 0;
  double seconds = 0;
  std::vector<long double> level_values;
  long near_unit_roots = 0;  // flagged |z| within 1e-10 of the unit circle
};

// m(P) with the Jensen reduction taken in variable `var` (0=X,1=Y,2=Z);
// recurses to the lower-dimensional Mahler measure of the leading coefficient
MahlerEstimate mahler_measure(const LaurentPoly3& p, const TorusQuadrature& quad,
                              int var = 2);

MahlerEstimate mahler_montecarlo(const LaurentPoly3& p, std::size_t samples,
                                 std::uint64_t seed);

// exact one-variable Mahler measure (all other variables must be absent)
long double mahler_measure_1var(const LaurentPoly3& p, int var);

struct DeningerReport {
  long double max_poly_residual = 0;   // |P(e^{i phi}, e^{i psi}, Z)|
  long double z_min = 0, z_max = 0;    // observed range of Z on the region
  long double max_fibre_residual = 0;  // cos phi + cos psi - (1 - (Z+1/Z)/2)
  bool pass = false;
};
DeningerReport deninger_fiber_diagnostics(int grid = 400);

}  // namespace mm
