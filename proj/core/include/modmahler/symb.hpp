// Group-algebra bookkeeping on (Z/N)^2: horospherical map, the Pi_epsilon
// projector, group-algebra product mu, and the conversion of Milnor-symbol
// divisor data into Eisenstein-symbol combinations.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "modmahler/mat2.hpp"
#include "modmahler/rational.hpp"
#include "modmahler/siegel.hpp"

namespace mm {

using Pt = std::pair<long, long>;  // element of (Z/N)^2, reduced to [0,N)^2

struct TorsionDivisor {
  long N = 1;
  std::map<Pt, Rat> pts;

  void add(Pt p, const Rat& c);
  Rat degree() const;
  TorsionDivisor translated(Pt a) const;
  TorsionDivisor negated_points() const;  // [u] -> [-u]
  std::string str() const;
};

// convolution product in Q[(Z/N)^2]
TorsionDivisor mu_product(const TorsionDivisor& d1, const TorsionDivisor& d2);

struct TensorCombo {
  long N = 1;
  std::map<std::pair<Pt, Pt>, Rat> terms;
  void add(const Pt& u, const Pt& v, const Rat& c);
};

TensorCombo tensor(const TorsionDivisor& d0, const TorsionDivisor& d1);
TensorCombo pi_epsilon(const TensorCombo& x);
// theta(d) = Pi_epsilon(d (x) d0), d0 = N^2 [0] - sum_u [u]
TensorCombo theta_map(const TorsionDivisor& d);
TorsionDivisor mu_of_tensor(const TensorCombo& x);

// f: GL2(Z/N) -> Q with f(Bg) = f(g), f(-g) = sign * f(g), stored on
// canonical coset representatives of {±(* *; 0 1)} \ GL2(Z/N)
class CosetTable;
struct HoroFunction {
  long N = 1;
  int sign = 1;
  std::vector<Rat> values;  // indexed by coset id
  std::shared_ptr<const CosetTable> table;
  Rat value_at(const Mat2& g) const;
};

// lambda^k(phi)(g) = sum_x phi(g^{-1} x) B_{k+2}({x2/N})
HoroFunction horospherical(int k, const TorsionDivisor& d);
// dimension of V_N^- (for rank checks)
long dim_v_minus(long N);
long horospherical_image_rank(int k, long N);

// rational combination sum c_u Eis^k(u), normalized via Eis^k(-u) = (-1)^k Eis^k(u)
struct EisCombo {
  int weight = 0;
  long N = 1;
  std::map<Pt, Rat> coeff;  // canonical representatives only
  bool sign_ambiguous = false;

  void add(Pt u, const Rat& c);
  std::string str() const;
};

// weight-1 combination ±(N/3) sum_u [mu(divIotaX (x) divY)](u) Eis^1(u)
EisCombo milnor_to_eis(const TorsionDivisor& div_iota_x, const TorsionDivisor& div_y);

struct Eis0FromUnit {
  EisCombo combo;          // weight 0
  Cyclotomic prefactor;    // dropped from the combo, |prefactor| must be 1
};
Eis0FromUnit unit_to_eis0(const UnitProduct& f);

// GL2(Z/N) coset machinery (exposed for tests)
class CosetTable {
 public:
  explicit CosetTable(long N);
  long N() const { return n_; }
  size_t coset_count() const { return reps_.size(); }
  const std::vector<Mat2>& reps() const { return reps_; }
  long coset_of(const Mat2& g) const;  // g reduced mod N must be invertible
  // +1 if g in B*rep, -1 if g in -B*rep of its coset
  int sign_of(const Mat2& g) const;
  bool coset_self_negative(long id) const;
  static std::shared_ptr<const CosetTable> get(long N);

 private:
  long n_;
  std::vector<Mat2> reps_;
  std::vector<bool> self_negative_;
  std::map<std::array<long, 4>, long> coset_id_;
  std::map<std::array<long, 4>, int> coset_sign_;
};

Mat2 invert_mod(const Mat2& g, long N);

}  // namespace mm
