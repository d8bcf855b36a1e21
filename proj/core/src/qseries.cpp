#include "modmahler/qseries.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mm {

namespace {
std::optional<Rat> min_opt(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}
}  // namespace

QSeries QSeries::constant(const Cyclotomic& c) {
  QSeries s;
  if (!c.is_zero()) s.c_[0] = c;
  return s;
}

QSeries QSeries::monomial(const Cyclotomic& c, const Rat& e) {
  QSeries s;
  s.m_ = static_cast<long>(e.get_den().get_si());
  if (!c.is_zero()) s.c_[static_cast<long>(e.get_num().get_si())] = c;
  return s;
}

std::optional<Rat> QSeries::lowest_exponent() const {
  if (c_.empty()) return std::nullopt;
  return rat(c_.begin()->first, m_);
}

void QSeries::set_truncation(const Rat& t) {
  trunc_ = t;
  auto it = c_.begin();
  while (it != c_.end()) {
    if (rat(it->first, m_) >= t)
      it = c_.erase(it);
    else
      ++it;
  }
}

QSeries QSeries::truncated(const Rat& t) const {
  QSeries s = *this;
  Rat nt = trunc_ ? std::min(*trunc_, t) : t;
  s.set_truncation(nt);
  return s;
}

Cyclotomic QSeries::coeff(const Rat& e) const {
  if (trunc_ && e >= *trunc_)
    throw std::out_of_range("QSeries::coeff beyond truncation window");
  Rat scaled = e * m_;
  if (!is_integer(scaled)) return Cyclotomic();
  auto it = c_.find(static_cast<long>(scaled.get_num().get_si()));
  if (it == c_.end()) return Cyclotomic();
  return it->second;
}

void QSeries::lift_to(long m) {
  if (m == m_) return;
  if (m % m_ != 0) throw std::logic_error("QSeries::lift_to: m not a multiple");
  long f = m / m_;
  std::map<long, Cyclotomic> nc;
  for (auto& [k, v] : c_) nc[k * f] = v;
  c_ = std::move(nc);
  m_ = m;
}

void QSeries::normalize() {
  auto it = c_.begin();
  while (it != c_.end()) {
    if (it->second.is_zero())
      it = c_.erase(it);
    else
      ++it;
  }
}

void QSeries::set_coeff(const Rat& e, const Cyclotomic& c) {
  long m = lcm_long(m_, static_cast<long>(e.get_den().get_si()));
  lift_to(m);
  Rat em = e * Rat(m);
  long key = static_cast<long>(em.get_num().get_si());
  if (c.is_zero())
    c_.erase(key);
  else
    c_[key] = c;
}

void QSeries::add_coeff(const Rat& e, const Cyclotomic& c) {
  long m = lcm_long(m_, static_cast<long>(e.get_den().get_si()));
  lift_to(m);
  Rat em = e * Rat(m);
  long key = static_cast<long>(em.get_num().get_si());
  auto it = c_.find(key);
  if (it == c_.end()) {
    if (!c.is_zero()) c_[key] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

QSeries QSeries::operator-() const {
  QSeries s = *this;
  for (auto& [k, v] : s.c_) v = -v;
  return s;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  long m = lcm_long(m_, o.m_);
  lift_to(m);
  QSeries ob = o;
  ob.lift_to(m);
  for (auto& [k, v] : ob.c_) {
    auto it = c_.find(k);
    if (it == c_.end())
      c_[k] = v;
    else {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }
  trunc_ = min_opt(trunc_, o.trunc_);
  if (trunc_) set_truncation(*trunc_);
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const Cyclotomic& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [k, v] : c_) v *= s;
  normalize();
  return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  QSeries r;
  r.m_ = lcm_long(a.m_, b.m_);
  QSeries aa = a, bb = b;
  aa.lift_to(r.m_);
  bb.lift_to(r.m_);

  // validity window: T = min(Ta + low_b, Tb + low_a); an exact factor
  // imposes no constraint of its own
  std::optional<Rat> t;
  if (a.trunc_) {
    if (auto lb = b.lowest_exponent()) t = min_opt(t, *a.trunc_ + *lb);
    else if (b.trunc_) t = min_opt(t, *a.trunc_ + *b.trunc_);  // b zero but windowed
    else return r;  // b identically zero, exact
  }
  if (b.trunc_) {
    if (auto la = a.lowest_exponent()) t = min_opt(t, *b.trunc_ + *la);
    else if (a.trunc_) t = min_opt(t, *b.trunc_ + *a.trunc_);
    else return r;
  }
  std::optional<long> tkey;
  if (t) tkey = static_cast<long>(floor_rat(*t * r.m_).get_si());

  for (auto& [ka, va] : aa.c_) {
    for (auto& [kb, vb] : bb.c_) {
      long k = ka + kb;
      if (tkey && rat(k, r.m_) >= *t) continue;
      auto it = r.c_.find(k);
      if (it == r.c_.end())
        r.c_[k] = va * vb;
      else
        it->second += va * vb;
    }
  }
  r.trunc_ = t;
  r.normalize();
  return r;
}

QSeries QSeries::rescaled(const Rat& t) const {
  if (t <= 0) throw std::invalid_argument("rescaled: t must be positive");
  QSeries r;
  long tden = static_cast<long>(t.get_den().get_si());
  long tnum = static_cast<long>(t.get_num().get_si());
  r.m_ = m_ * tden;
  for (auto& [k, v] : c_) r.c_[k * tnum] = v;
  if (trunc_) r.trunc_ = *trunc_ * t;
  // compress the exponent denominator where possible
  long g = r.m_;
  for (auto& [k, v] : r.c_) {
    g = static_cast<long>(std::gcd(g, std::abs(k)));
    if (g == 1) break;
  }
  if (g > 1 && r.m_ % g == 0) {
    std::map<long, Cyclotomic> nc;
    for (auto& [k, v] : r.c_) nc[k / g] = v;
    r.c_ = std::move(nc);
    r.m_ /= g;
  }
  return r;
}

QSeries QSeries::inverse(const Rat& window) const {
  if (c_.empty()) throw std::domain_error("QSeries::inverse of zero series");
  Rat low = *lowest_exponent();
  Cyclotomic lead = c_.begin()->second;
  Cyclotomic lead_inv = lead.inverse();
  // write this = c0 q^low (1 + u), invert the (1+u) part by recursion on keys
  long m = m_;
  std::map<long, Cyclotomic> u;  // shifted so that key 0 is the unit term
  long low_key = c_.begin()->first;
  for (auto it = std::next(c_.begin()); it != c_.end(); ++it)
    u[it->first - low_key] = lead_inv * it->second;

  Rat span = window - low;  // how far past the lowest exponent we need
  if (trunc_) {
    Rat avail = *trunc_ - low;
    span = std::min(span, avail);
  }
  long span_key = static_cast<long>(floor_rat(span * m).get_si());

  std::map<long, Cyclotomic> inv;  // coefficients of (1+u)^{-1}
  inv[0] = Cyclotomic(Rat(1));
  for (long k = 1; k <= span_key; ++k) {
    // b_k = -sum_{j>=1} u_j b_{k-j}
    Cyclotomic acc;
    for (auto& [j, uj] : u) {
      if (j > k) break;
      auto it = inv.find(k - j);
      if (it == inv.end()) continue;
      acc += uj * it->second;
    }
    if (!acc.is_zero()) inv[k] = -acc;
  }
  QSeries r;
  r.m_ = m;
  for (auto& [k, v] : inv) {
    Cyclotomic c = lead_inv * v;
    if (!c.is_zero()) r.c_[k - low_key] = c;
  }
  r.trunc_ = rat(span_key + 1, m) - low;
  r.normalize();
  return r;
}

QSeries::Eval QSeries::eval(std::complex<long double> tau, long double growth_c,
                            int growth_p) const {
  const long double pi = 3.14159265358979323846264338327950288L;
  Eval out;
  if (tau.imag() <= 0) throw std::invalid_argument("QSeries::eval: Im tau must be > 0");
  std::complex<long double> itau(-2.0L * pi * tau.imag(), 2.0L * pi * tau.real());
  for (auto& [k, v] : c_) {
    long double e = static_cast<long double>(k) / m_;
    std::complex<long double> qe = std::exp(itau * e);
    out.value += v.embed() * qe;
  }
  if (!trunc_) {
    out.tail_bound = 0;
    return out;
  }
  if (growth_c < 0) {
    out.bounded = false;
    out.tail_bound = std::numeric_limits<long double>::infinity();
    return out;
  }
  long double T = to_ld(*trunc_);
  long double logq = -2.0L * pi * tau.imag();
  long double r = std::exp(logq / m_);  // |q|^{1/M}
  long double term = growth_c * std::pow(1.0L + std::max(T, 0.0L), growth_p) *
                     std::exp(logq * T);
  long double sum = 0;
  long double j = 0;
  // sum C (1+T+j/M)^p |q|^{T+j/M}; geometric with slowly varying polynomial
  while (term > sum * 1e-25L + 1e-300L && j < 100000) {
    sum += term;
    j += 1;
    long double ratio = std::pow((1.0L + T + j / m_) / (1.0L + T + (j - 1) / m_),
                                 growth_p) * r;
    term *= ratio;
    if (ratio < 1.0L && term < 1e-280L) break;
  }
  // geometric remainder with the last ratio (safe once ratio < 1)
  long double ratio = std::pow((1.0L + T + (j + 1) / m_) / (1.0L + T + j / m_),
                               growth_p) * r;
  if (ratio < 1.0L)
    sum += term * ratio / (1.0L - ratio);
  else
    out.bounded = false;
  out.tail_bound = sum;
  return out;
}

std::string QSeries::str(size_t max_terms) const {
  std::ostringstream os;
  size_t n = 0;
  for (auto& [k, v] : c_) {
    if (n++ >= max_terms) {
      os << " + ...";
      break;
    }
    if (n > 1) os << " + ";
    os << "(" << v.str() << ")";
    if (k != 0) {
      os << "*q";
      long g = std::gcd(std::abs(k), m_);
      long kk = k / g, mm = m_ / g;
      if (mm == 1) {
        if (kk != 1) os << "^" << kk;
      } else {
        os << "^(" << kk << "/" << mm << ")";
      }
    }
  }
  if (n == 0) os << "0";
  if (trunc_) os << " + O(q^" << trunc_->get_str() << ")";
  return os.str();
}

}  // namespace mm
