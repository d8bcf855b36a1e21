// Truncated formal q-series with exact rational exponents (denominator M)
// and cyclotomic coefficients. A series knows the window below which its
// coefficients are exact: exponents >= truncation() are unknown.
#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "modmahler/cyclotomic.hpp"
#include "modmahler/rational.hpp"

namespace mm {

class QSeries {
 public:
  // zero series, exact everywhere
  QSeries() : m_(1) {}

  static QSeries constant(const Cyclotomic& c);
  static QSeries monomial(const Cyclotomic& c, const Rat& exponent);

  long denominator_exponent() const { return m_; }
  // nullopt = exact series (all further coefficients are zero)
  const std::optional<Rat>& truncation() const { return trunc_; }
  bool is_zero_series() const { return c_.empty(); }
  std::optional<Rat> lowest_exponent() const;

  void set_truncation(const Rat& t);
  QSeries truncated(const Rat& t) const;

  const std::map<long, Cyclotomic>& raw() const { return c_; }
  Rat exponent_of_key(long k) const { return rat(k, m_); }

  // coefficient of q^e; throws if e lies at/above the truncation window
  Cyclotomic coeff(const Rat& e) const;
  void set_coeff(const Rat& e, const Cyclotomic& c);
  void add_coeff(const Rat& e, const Cyclotomic& c);

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  QSeries& operator*=(const Cyclotomic& s);
  friend QSeries operator*(QSeries a, const Cyclotomic& s) { return a *= s; }
  friend QSeries operator*(const Cyclotomic& s, QSeries a) { return a *= s; }

  friend QSeries operator*(const QSeries& a, const QSeries& b);

  // q^e -> q^{t e}; t a positive rational (F(tau) -> F(t tau))
  QSeries rescaled(const Rat& t) const;

  // multiplicative inverse up to the given exponent window; lowest
  // coefficient must be invertible
  QSeries inverse(const Rat& window) const;

  struct Eval {
    std::complex<long double> value{0, 0};
    long double tail_bound = 0;
    bool bounded = true;  // false if no growth bound available for the tail
  };
  // Evaluate at tau (Im tau > 0). |coeff at exponent e| <= growth_c * (1+e)^growth_p
  // is the caller-supplied tail model; pass growth_c < 0 for "no bound".
  Eval eval(std::complex<long double> tau, long double growth_c = -1,
            int growth_p = 0) const;

  std::string str(size_t max_terms = 12) const;

 private:
  void lift_to(long m);
  void normalize();

  long m_;
  std::map<long, Cyclotomic> c_;
  std::optional<Rat> trunc_;
};

}  // namespace mm
