#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace mm {

// integer 2x2 matrix (a b; c d)
struct Mat2 {
  long a = 1, b = 0, c = 0, d = 1;

  long det() const { return a * d - b * c; }
  bool is_sl2() const { return det() == 1; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  Mat2 inv() const {
    long dt = det();
    if (dt != 1 && dt != -1) throw std::domain_error("Mat2::inv: not unimodular");
    if (dt == 1) return {d, -b, -c, a};
    return {-d, b, c, -a};
  }
  Mat2 neg() const { return {-a, -b, -c, -d}; }
  Mat2 mod(long N) const {
    auto m = [N](long x) { return ((x % N) + N) % N; };
    return {m(a), m(b), m(c), m(d)};
  }
  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  std::complex<long double> act(std::complex<long double> tau) const {
    return (static_cast<long double>(a) * tau + static_cast<long double>(b)) /
           (static_cast<long double>(c) * tau + static_cast<long double>(d));
  }
  std::string str() const {
    return "(" + std::to_string(a) + " " + std::to_string(b) + "; " +
           std::to_string(c) + " " + std::to_string(d) + ")";
  }
};

inline Mat2 mat_sigma() { return {0, -1, 1, 0}; }

// row vector (u1,u2) * g mod N
inline std::array<long, 2> row_times(const std::array<long, 2>& u, const Mat2& g,
                                     long N) {
  auto m = [N](long x) { return ((x % N) + N) % N; };
  return {m(u[0] * g.a + u[1] * g.c), m(u[0] * g.b + u[1] * g.d)};
}

}  // namespace mm
