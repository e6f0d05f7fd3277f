#pragma once

#include <cstdlib>

#include "cluskit/common.hpp"

namespace cluskit {

// Coefficient ring Z[v^{+-1}].  Terms are kept sorted by v-exponent; zero
// coefficients are never stored.
struct VCoeff {
  std::map<long long, Int> c;

  VCoeff() = default;
  explicit VCoeff(long long k) {
    if (k != 0) c[0] = k;
  }
  explicit VCoeff(const Int& k) {
    if (k != 0) c[0] = k;
  }

  static VCoeff zero() { return VCoeff(); }
  static VCoeff one() { return VCoeff(1); }
  static VCoeff vpow(long long e, Int coeff = 1) {
    VCoeff r;
    if (coeff != 0) r.c[e] = std::move(coeff);
    return r;
  }

  bool is_zero() const { return c.empty(); }
  bool is_one() const {
    return c.size() == 1 && c.begin()->first == 0 && c.begin()->second == 1;
  }
  // Single term a*v^e.
  bool is_monomial() const { return c.size() == 1; }

  void add_term(long long e, const Int& a) {
    if (a == 0) return;
    auto it = c.find(e);
    if (it == c.end()) {
      c.emplace(e, a);
    } else {
      it->second += a;
      if (it->second == 0) c.erase(it);
    }
  }

  VCoeff& operator+=(const VCoeff& o) {
    for (const auto& [e, a] : o.c) add_term(e, a);
    return *this;
  }
  VCoeff& operator-=(const VCoeff& o) {
    for (const auto& [e, a] : o.c) add_term(e, -a);
    return *this;
  }
  friend VCoeff operator+(VCoeff a, const VCoeff& b) { return a += b; }
  friend VCoeff operator-(VCoeff a, const VCoeff& b) { return a -= b; }
  friend VCoeff operator-(const VCoeff& a) {
    VCoeff r;
    for (const auto& [e, x] : a.c) r.c[e] = -x;
    return r;
  }

  friend VCoeff operator*(const VCoeff& a, const VCoeff& b) {
    VCoeff r;
    for (const auto& [ea, xa] : a.c)
      for (const auto& [eb, xb] : b.c) r.add_term(ea + eb, xa * xb);
    return r;
  }
  VCoeff& operator*=(const VCoeff& o) { return *this = *this * o; }

  // Multiplication by v^e.
  VCoeff shifted(long long e) const {
    VCoeff r;
    for (const auto& [k, a] : c) r.c[k + e] = a;
    return r;
  }

  // v -> v^{-1}.
  VCoeff bar() const {
    VCoeff r;
    for (const auto& [k, a] : c) r.c[-k] = a;
    return r;
  }

  Int eval_one() const {
    Int s = 0;
    for (const auto& [k, a] : c) s += a;
    return s;
  }

  bool operator==(const VCoeff& o) const { return c == o.c; }
  bool operator!=(const VCoeff& o) const { return c != o.c; }

  // Exact division in Z[v^{+-1}]; nullopt when the quotient does not exist.
  static std::optional<VCoeff> divide(const VCoeff& a, const VCoeff& b) {
    if (b.is_zero()) throw InexactDivision("VCoeff::divide by zero");
    if (a.is_zero()) return VCoeff();
    const long long shift = a.c.begin()->first - b.c.begin()->first;
    VCoeff rem = a;
    VCoeff q;
    // Quotient exponents are bounded below by shift; leading exponents
    // strictly decrease, so the loop terminates.
    while (!rem.is_zero()) {
      const auto& rl = *rem.c.rbegin();
      const auto& bl = *b.c.rbegin();
      const long long qe = rl.first - bl.first;
      if (qe < shift) return std::nullopt;
      Int qc = rl.second / bl.second;
      if (qc * bl.second != rl.second) return std::nullopt;
      VCoeff t = VCoeff::vpow(qe, qc);
      q += t;
      rem -= t * b;
    }
    return q;
  }

  // Terms in ascending v-exponent, e.g. "1 - v^2 + 3*v^4".
  std::string to_string() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, a] : c) {
      Int mag = a < 0 ? Int(-a) : a;
      if (first) {
        if (a < 0) os << '-';
        first = false;
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      const bool unit = (mag == 1);
      if (e == 0) {
        os << mag.str();
      } else {
        if (!unit) os << mag.str() << '*';
        os << 'v';
        if (e != 1) os << '^' << e;
      }
    }
    return os.str();
  }
};

}  // namespace cluskit
