#include "modmahler/laurent.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mm {

namespace {

LaurentPoly3::Cplx cpow(LaurentPoly3::Cplx b, int e) {
  if (e == 0) return {1.0L, 0.0L};
  bool inv = e < 0;
  unsigned k = inv ? -e : e;
  LaurentPoly3::Cplx acc{1.0L, 0.0L};
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return inv ? LaurentPoly3::Cplx{1.0L, 0.0L} / acc : acc;
}

struct Tokenizer {
  std::string s;
  size_t pos = 0;
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip();
    return pos >= s.size();
  }
  char peek() {
    skip();
    return s[pos];
  }
};

}  // namespace

void LaurentPoly3::add_term(const Expo& e, const Rat& c) {
  if (c == 0) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_[e] = c;
  } else {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

LaurentPoly3 LaurentPoly3::parse(const std::string& text,
                                 const std::array<std::string, 3>& vars) {
  LaurentPoly3 p;
  Tokenizer tk{text};
  bool first = true;
  while (!tk.eof()) {
    int sign = 1;
    char c = tk.peek();
    if (c == '+' || c == '-') {
      sign = (c == '-') ? -1 : 1;
      ++tk.pos;
    } else if (!first) {
      throw std::invalid_argument("LaurentPoly3::parse: expected +/- in " + text);
    }
    first = false;
    // parse one monomial: factors separated by '*'
    Rat coef(sign);
    Expo e{0, 0, 0};
    bool want_factor = true;
    while (want_factor && !tk.eof()) {
      tk.skip();
      char ch = tk.peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        size_t q = tk.pos;
        while (q < tk.s.size() &&
               (std::isdigit(static_cast<unsigned char>(tk.s[q])) || tk.s[q] == '/'))
          ++q;
        coef *= rat_from_string(tk.s.substr(tk.pos, q - tk.pos));
        tk.pos = q;
      } else {
        int vi = -1;
        for (int i = 0; i < 3; ++i) {
          if (tk.s.compare(tk.pos, vars[i].size(), vars[i]) == 0) {
            vi = i;
            break;
          }
        }
        if (vi < 0) throw std::invalid_argument("LaurentPoly3::parse: bad factor in " + text);
        tk.pos += vars[vi].size();
        int ex = 1;
        tk.skip();
        if (tk.pos < tk.s.size() && tk.s[tk.pos] == '^') {
          ++tk.pos;
          tk.skip();
          size_t q = tk.pos;
          if (q < tk.s.size() && (tk.s[q] == '-' || tk.s[q] == '+')) ++q;
          while (q < tk.s.size() && std::isdigit(static_cast<unsigned char>(tk.s[q]))) ++q;
          ex = std::stoi(tk.s.substr(tk.pos, q - tk.pos));
          tk.pos = q;
        }
        e[vi] += ex;
      }
      tk.skip();
      if (tk.pos < tk.s.size() && tk.s[tk.pos] == '*') {
        ++tk.pos;
        want_factor = true;
      } else {
        want_factor = false;
      }
    }
    p.add_term(e, coef);
  }
  return p;
}

LaurentPoly3 LaurentPoly3::operator*(const LaurentPoly3& o) const {
  LaurentPoly3 r;
  for (auto& [ea, ca] : t_)
    for (auto& [eb, cb] : o.t_)
      r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return r;
}

LaurentPoly3 LaurentPoly3::operator+(const LaurentPoly3& o) const {
  LaurentPoly3 r = *this;
  for (auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

LaurentPoly3::Cplx LaurentPoly3::eval(Cplx x, Cplx y, Cplx z) const {
  Cplx acc{0, 0};
  for (auto& [e, c] : t_)
    acc += to_ld(c) * cpow(x, e[0]) * cpow(y, e[1]) * cpow(z, e[2]);
  return acc;
}

int LaurentPoly3::min_degree(int var) const {
  int m = 0;
  bool first = true;
  for (auto& [e, c] : t_) {
    if (first || e[var] < m) m = e[var];
    first = false;
  }
  return m;
}

int LaurentPoly3::max_degree(int var) const {
  int m = 0;
  bool first = true;
  for (auto& [e, c] : t_) {
    if (first || e[var] > m) m = e[var];
    first = false;
  }
  return m;
}

std::vector<LaurentPoly3> LaurentPoly3::coefficients_in(int var) const {
  int lo = min_degree(var), hi = max_degree(var);
  std::vector<LaurentPoly3> out(hi - lo + 1);
  for (auto& [e, c] : t_) {
    Expo r = e;
    int d = e[var] - lo;
    r[var] = 0;
    out[d].add_term(r, c);
  }
  return out;
}

LaurentPoly3 LaurentPoly3::leading_coefficient(int var) const {
  auto cs = coefficients_in(var);
  return cs.back();
}

std::string LaurentPoly3::str(const std::array<std::string, 3>& vars) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : t_) {
    Rat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool printed = false;
    if (a != 1 || (e[0] == 0 && e[1] == 0 && e[2] == 0)) {
      os << a.get_str();
      printed = true;
    }
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << vars[i];
      if (e[i] != 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace mm
