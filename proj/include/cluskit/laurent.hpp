#pragma once

#include "cluskit/common.hpp"
#include "cluskit/linalg.hpp"
#include "cluskit/vcoeff.hpp"

namespace cluskit {

// Integer skew-symmetric form on the exponent lattice of a torus.  An empty
// matrix means the zero form (classical, commutative case).
struct SkewForm {
  IntMat lambda;  // empty, or n x n skew-symmetric

  SkewForm() = default;
  explicit SkewForm(IntMat m) : lambda(std::move(m)) {
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (lambda[i].size() != lambda.size())
        throw DimensionError("SkewForm: not square");
      for (std::size_t j = 0; j < lambda.size(); ++j)
        if (lambda[i][j] != -lambda[j][i])
          throw Error("SkewForm: matrix not skew-symmetric");
    }
  }

  bool is_zero() const { return lambda.empty(); }

  long long operator()(const LatticeVec& g, const LatticeVec& h) const {
    if (lambda.empty()) return 0;
    if (g.size() != lambda.size() || h.size() != lambda.size())
      throw DimensionError("SkewForm: vector size mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] == 0) continue;
      long long row = 0;
      for (std::size_t j = 0; j < h.size(); ++j) row += lambda[i][j] * h[j];
      s += g[i] * row;
    }
    return s;
  }
};

// Element of the (possibly quantum) Laurent polynomial torus: a finite sum
// c_g x^g with c_g in Z[v^{+-1}], x^g * x^h = v^{Lambda(g,h)} x^{g+h}.
struct LaurentElement {
  int n = 0;
  std::uint64_t seed_id = 0;  // 0 = unspecified ambient seed
  std::map<LatticeVec, VCoeff> t;

  LaurentElement() = default;
  explicit LaurentElement(int dim, std::uint64_t sid = 0) : n(dim), seed_id(sid) {}

  static LaurentElement monomial(int dim, const LatticeVec& g,
                                 VCoeff c = VCoeff::one(),
                                 std::uint64_t sid = 0) {
    LaurentElement z(dim, sid);
    if (static_cast<int>(g.size()) != dim)
      throw DimensionError("monomial: exponent size mismatch");
    if (!c.is_zero()) z.t.emplace(g, std::move(c));
    return z;
  }
  static LaurentElement unit(int dim, std::uint64_t sid = 0) {
    return monomial(dim, LatticeVec(static_cast<std::size_t>(dim), 0),
                    VCoeff::one(), sid);
  }

  bool is_zero() const { return t.empty(); }
  bool is_monomial() const { return t.size() == 1; }
  std::size_t term_count() const { return t.size(); }

  void add_term(const LatticeVec& g, const VCoeff& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(g.size()) != n)
      throw DimensionError("add_term: exponent size mismatch");
    auto it = t.find(g);
    if (it == t.end()) {
      t.emplace(g, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  }

  VCoeff coeff(const LatticeVec& g) const {
    auto it = t.find(g);
    return it == t.end() ? VCoeff::zero() : it->second;
  }

  bool operator==(const LaurentElement& o) const { return n == o.n && t == o.t; }
  bool operator!=(const LaurentElement& o) const { return !(*this == o); }

  LaurentElement& operator+=(const LaurentElement& o) {
    check_same_torus(o);
    for (const auto& [g, c] : o.t) add_term(g, c);
    return *this;
  }
  LaurentElement& operator-=(const LaurentElement& o) {
    check_same_torus(o);
    for (const auto& [g, c] : o.t) add_term(g, -c);
    return *this;
  }
  friend LaurentElement operator+(LaurentElement a, const LaurentElement& b) {
    return a += b;
  }
  friend LaurentElement operator-(LaurentElement a, const LaurentElement& b) {
    return a -= b;
  }
  friend LaurentElement operator-(const LaurentElement& a) {
    LaurentElement r(a.n, a.seed_id);
    for (const auto& [g, c] : a.t) r.t.emplace(g, -c);
    return r;
  }

  LaurentElement scaled(const VCoeff& c) const {
    LaurentElement r(n, seed_id);
    if (c.is_zero()) return r;
    for (const auto& [g, x] : t) {
      VCoeff y = x * c;
      if (!y.is_zero()) r.t.emplace(g, std::move(y));
    }
    return r;
  }

  // v -> v^{-1}; an anti-automorphism fixing every x^g, hence termwise here.
  LaurentElement bar() const {
    LaurentElement r(n, seed_id);
    for (const auto& [g, c] : t) r.t.emplace(g, c.bar());
    return r;
  }

  LaurentElement eval_v_one() const {
    LaurentElement r(n, seed_id);
    for (const auto& [g, c] : t) r.add_term(g, VCoeff(c.eval_one()));
    return r;
  }

  void check_same_torus(const LaurentElement& o) const {
    if (n != o.n) throw DimensionError("elements from different tori");
    if (seed_id && o.seed_id && seed_id != o.seed_id)
      throw DimensionError("elements from different ambient seeds");
  }

  // Canonical text form: terms in ascending lex order of exponent vectors.
  std::string to_string() const {
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : t) {
      std::string cs;
      bool negative = false;
      if (c.is_monomial()) {
        VCoeff cc = c;
        if (cc.c.begin()->second < 0) {
          negative = true;
          cc = -cc;
        }
        if (!cc.is_one() || vec_is_zero(g)) cs = cc.to_string();
      } else {
        cs = "(" + c.to_string() + ")";
      }
      if (first) {
        if (negative) os << '-';
        first = false;
      } else {
        os << (negative ? " - " : " + ");
      }
      if (!vec_is_zero(g)) {
        if (!cs.empty()) os << cs << " * ";
        os << "x^" << vec_to_string(g);
      } else {
        os << cs;
      }
    }
    return os.str();
  }
};

// Bilinear extension of x^g * x^h = v^{L(g,h)} x^{g+h}.
inline LaurentElement twisted_mul(const LaurentElement& a,
                                  const LaurentElement& b, const SkewForm& L) {
  a.check_same_torus(b);
  LaurentElement r(a.n, a.seed_id ? a.seed_id : b.seed_id);
  for (const auto& [ga, ca] : a.t)
    for (const auto& [gb, cb] : b.t) {
      VCoeff c = (ca * cb).shifted(L(ga, gb));
      r.add_term(vec_add(ga, gb), c);
    }
  return r;
}

inline LaurentElement twisted_pow(const LaurentElement& a, long long e,
                                  const SkewForm& L) {
  if (e < 0) throw Error("twisted_pow: negative exponent");
  LaurentElement r = LaurentElement::unit(a.n, a.seed_id);
  for (long long i = 0; i < e; ++i) r = twisted_mul(r, a, L);
  return r;
}

// Exact right division: returns q with q * b = a; throws InexactDivision
// when a is not right-divisible by b.  Leading-term elimination in lex order.
inline LaurentElement exact_div(const LaurentElement& a, const LaurentElement& b,
                                const SkewForm& L) {
  a.check_same_torus(b);
  if (b.is_zero()) throw InexactDivision("exact_div: division by zero");
  LaurentElement q(a.n, a.seed_id ? a.seed_id : b.seed_id);
  if (a.is_zero()) return q;
  const LatticeVec low = vec_sub(a.t.begin()->first, b.t.begin()->first);
  LaurentElement rem = a;
  const auto& bl = *b.t.rbegin();
  std::size_t guard = 0;
  while (!rem.is_zero()) {
    if (++guard > 2000000) throw InexactDivision("exact_div: no exact quotient");
    const auto& rl = *rem.t.rbegin();
    const LatticeVec qe = vec_sub(rl.first, bl.first);
    if (qe < low) throw InexactDivision("exact_div: no exact quotient");
    auto qc = VCoeff::divide(rl.second, bl.second.shifted(L(qe, bl.first)));
    if (!qc) throw InexactDivision("exact_div: leading coefficient not divisible");
    LaurentElement term = LaurentElement::monomial(a.n, qe, *qc, q.seed_id);
    q += term;
    rem -= twisted_mul(term, b, L);
  }
  return q;
}

}  // namespace cluskit
