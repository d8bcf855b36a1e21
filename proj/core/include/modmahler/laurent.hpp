// Laurent polynomials in three variables with exact rational coefficients;
// text format: sum of monomials c*X^i*Y^j*Z^k.
#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "modmahler/rational.hpp"

namespace mm {

class LaurentPoly3 {
 public:
  using Expo = std::array<int, 3>;
  using Cplx = std::complex<long double>;

  LaurentPoly3() = default;
  static LaurentPoly3 parse(const std::string& text,
                            const std::array<std::string, 3>& vars = {"X", "Y", "Z"});

  const std::map<Expo, Rat>& terms() const { return t_; }
  bool empty() const { return t_.empty(); }
  void add_term(const Expo& e, const Rat& c);

  LaurentPoly3 operator*(const LaurentPoly3& o) const;
  LaurentPoly3 operator+(const LaurentPoly3& o) const;

  Cplx eval(Cplx x, Cplx y, Cplx z) const;

  int min_degree(int var) const;
  int max_degree(int var) const;

  // P as a polynomial in variable `var` (after clearing the lowest power):
  // coefficient polynomials in the remaining two variables, ascending degree.
  std::vector<LaurentPoly3> coefficients_in(int var) const;

  // the leading coefficient polynomial with respect to `var` (a polynomial
  // in the other two variables)
  LaurentPoly3 leading_coefficient(int var) const;

  // substitute var -> fixed complex values and produce dense coefficient
  // vector in `var` (ascending); used by the quadrature inner loop
  std::string str(const std::array<std::string, 3>& vars = {"X", "Y", "Z"}) const;

 private:
  std::map<Expo, Rat> t_;
};

}  // namespace mm
