// Numerical completed L-values: Lambda_N(f, s) for the shipped weight-3
// newforms via incomplete-gamma series with Fricke sign, and exact or
// regularized Lambda*(E, 0) for E_3 Eisenstein combinations.
#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "modmahler/chars.hpp"
#include "modmahler/eis_series.hpp"

namespace mm {

// Gamma(s, x) for s in [0, 4], x > 0 (s = 0 gives E_1(x))
long double upper_incomplete_gamma(long double s, long double x);

// Hurwitz zeta and numeric Dirichlet L for real s (s != 1)
long double hurwitz_zeta(long double s, long double x);
std::complex<long double> dirichlet_L_numeric(const DirichletChar& chi, long double s);
std::complex<long double> dirichlet_L_numeric_derivative(const DirichletChar& chi,
                                                         long double s);

long double zeta3();              // Apery-accelerated series
long double zeta3_reference();    // independent literal
long double zeta_prime_minus2();  // numeric, via the zeta3 identity route

// Fricke sign of a weight-3 eigenform under W_N f(tau) = -i (sqrt(N) tau)^{-3}
// f(-1/(N tau)); evaluated numerically away from the fixed point.
int fricke_sign(const NewformTable& f, long N);

// Lambda_N(f, s) = N^{s/2} (2 pi)^{-s} Gamma(s) L(f, s) by the split-integral
// series; eps is the Fricke sign. Throws if the stored coefficients cannot
// reach the requested precision.
long double lambda_cusp(const NewformTable& f, long N, long double s, int eps,
                        long double precision = 1e-12L);

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

// exact symbolic value over the basis {1, log p, log pi, zeta(3)/pi^2}
struct ClosedFormValue {
  Rat c_one{0};
  std::map<long, Rat> c_log_prime;  // prime -> coefficient of log p
  Rat c_log_pi{0};
  Rat c_zeta3_over_pi2{0};
  bool exact = true;             // false if a numeric fallback term was needed
  long double numeric_extra = 0; // the fallback contribution

  long double value() const;
  std::string str() const;
};

struct EisTerm {
  Cyclotomic coeff;
  DirichletChar phi, psi;
  long t = 1;
};

// Lambda*(sum_i c_i E_3^{phi_i,psi_i,t_i}, 0) at ambient level N; requires the
// combined pole to be removable, else throws PoleError
ClosedFormValue lambda_eis_reg(const std::vector<EisTerm>& terms, long N);

// independent numeric evaluation of the same regularized value (finite
// differences through Hurwitz zeta); used for cross-checks
long double lambda_eis_reg_numeric(const std::vector<EisTerm>& terms, long N);

}  // namespace mm
