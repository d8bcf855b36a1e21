// Dirichlet characters (small moduli), generalized Bernoulli numbers and
// exact L-values at non-positive integers.
#pragma once

#include <string>
#include <vector>

#include "modmahler/cyclotomic.hpp"

namespace mm {

class DirichletChar {
 public:
  // trivial character mod 1
  DirichletChar();

  long modulus() const { return modulus_; }
  long conductor() const { return conductor_; }
  long order() const { return order_; }
  bool primitive() const { return conductor_ == modulus_; }
  bool trivial() const { return conductor_ == 1; }
  int parity() const { return parity_; }  // chi(-1)
  const std::string& name() const { return name_; }

  bool is_zero_at(long n) const;
  // chi(n) as element of Q(zeta_order)
  Cyclotomic value(long n) const;
  // exponent e with chi(n) = zeta_order^e, or -1 when chi(n)=0
  long zeta_power(long n) const;

  DirichletChar conjugate() const;
  bool same_character(const DirichletChar& o) const;
  bool real_valued() const { return order_ <= 2; }

  static std::vector<DirichletChar> all(long modulus);
  static std::vector<DirichletChar> primitive(long modulus);
  // "1", "chi3", "chi4", "chi8" (even), "chi8o" (odd), or "chi<м>.<index>"
  static DirichletChar by_name(const std::string& name);
  // the primitive character inducing *this
  DirichletChar primitive_part() const;
  // induce to a larger modulus (conductor must divide it)
  DirichletChar induced(long modulus) const;

 private:
  long modulus_ = 1;
  long conductor_ = 1;
  long order_ = 1;
  int parity_ = 1;
  std::vector<long> zpow_;  // per residue, -1 for non-units
  std::string name_;

  friend std::vector<DirichletChar> enumerate_chars(long m);
  void finalize(long index);
};

// B_{k,chi} = m^{k-1} sum_{a=1..m} chi(a) B_k(a/m)
Cyclotomic generalized_bernoulli(const DirichletChar& chi, unsigned k);

// L(chi, 1-k) = -B_{k,chi}/k (with chi trivial mod 1 this is zeta(1-k))
Cyclotomic dirichlet_L_nonpositive(const DirichletChar& chi, unsigned k);

}  // namespace mm
