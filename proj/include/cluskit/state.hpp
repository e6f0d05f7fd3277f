#pragma once

#include <memory>

#include "cluskit/seed.hpp"

namespace cluskit {

// A pointed element in normal form: degree g plus the coefficients of its
// F-polynomial, indexed by n over the unfrozen vertices of the ambient seed.
struct PointedElement {
  LatticeVec g;
  std::map<LatticeVec, VCoeff> f;  // n -> coefficient; f[0] = 1

  std::vector<int> support(const Seed& ambient) const {
    std::vector<char> seen(ambient.uf.size(), 0);
    for (const auto& [nvec, c] : f)
      for (std::size_t p = 0; p < nvec.size(); ++p)
        if (nvec[p] != 0) seen[p] = 1;
    std::vector<int> s;
    for (std::size_t p = 0; p < seen.size(); ++p)
      if (seen[p]) s.push_back(ambient.uf[p]);
    return s;
  }

  // Componentwise max of the exponents n, indexed like uf.
  LatticeVec supp_dim(const Seed& ambient) const {
    LatticeVec m(ambient.uf.size(), 0);
    for (const auto& [nvec, c] : f)
      for (std::size_t p = 0; p < nvec.size(); ++p)
        m[p] = std::max(m[p], nvec[p]);
    return m;
  }
};

// z = sum_n f(n) v^{Lambda(g, p*n)} x^{g + p*n}; the twisted normalization
// makes cluster variables' F-polynomial coefficients bar-invariant data.
inline LaurentElement reassemble_pointed(const PointedElement& p,
                                         const Seed& ambient) {
  LaurentElement z(ambient.n, ambient.id);
  for (const auto& [nvec, c] : p.f) {
    const LatticeVec shift = ambient.p_star(nvec);
    z.add_term(vec_add(p.g, shift), c.shifted(ambient.lambda(p.g, shift)));
  }
  return z;
}

// Inverse of reassemble_pointed.  Throws NotPointedError when z has no
// unique dominance-maximal exponent with coefficient exactly 1.
inline PointedElement extract_pointed(const LaurentElement& z,
                                      const Seed& ambient) {
  if (z.is_zero()) throw NotPointedError("extract_pointed: zero element");
  if (z.n != ambient.n) throw DimensionError("extract_pointed: wrong torus");
  // Tournament for the maximum; valid when a maximum exists.
  LatticeVec g = z.t.begin()->first;
  for (const auto& [m, c] : z.t)
    if (m != g && ambient.dominance_leq(g, m)) g = m;
  PointedElement p;
  p.g = g;
  for (const auto& [m, c] : z.t) {
    auto w = ambient.dominance_witness(m, g);
    if (!w)
      throw NotPointedError("extract_pointed: exponent " + vec_to_string(m) +
                            " not dominated by " + vec_to_string(g));
    p.f.emplace(*w, c.shifted(-ambient.lambda(g, vec_sub(m, g))));
  }
  const auto one = p.f.find(LatticeVec(ambient.uf.size(), 0));
  if (one == p.f.end() || !one->second.is_one())
    throw NotPointedError("extract_pointed: leading coefficient is not 1");
  return p;
}

inline bool is_pointed(const LaurentElement& z, const Seed& ambient) {
  try {
    extract_pointed(z, ambient);
    return true;
  } catch (const NotPointedError&) {
    return false;
  }
}

inline LatticeVec degree_of(const LaurentElement& z, const Seed& ambient) {
  return extract_pointed(z, ambient).g;
}

// A seed together with the Laurent expansions of its cluster variables in
// the torus of the initial seed, and its c-vectors.
struct SeedState {
  std::shared_ptr<const Seed> t0;
  Seed cur;
  std::vector<LaurentElement> vars;  // expansions in LP(t0)
  IntMat cmat;                       // r x r, column p = c-vector of uf[p]
  std::vector<int> word;             // mutations applied to t0, 0-based

  const Seed& initial() const { return *t0; }
};

inline SeedState initial_state(const Seed& s) {
  SeedState st;
  st.t0 = std::make_shared<Seed>(s);
  st.cur = s;
  for (int i = 0; i < s.n; ++i)
    st.vars.push_back(
        LaurentElement::monomial(s.n, unit_vec(s.n, i), VCoeff::one(), s.id));
  const std::size_t r = s.uf.size();
  st.cmat.assign(r, std::vector<long long>(r, 0));
  for (std::size_t p = 0; p < r; ++p) st.cmat[p][p] = 1;
  return st;
}

// Normalized cluster monomial prod_i x_i(t)^{a_i} as an element of LP(t0):
// v^{-sum_{i<j} a_i a_j Lambda_t(f_i, f_j)} * ordered twisted product.
// Unfrozen exponents must be nonnegative; frozen exponents may be negative.
inline LaurentElement state_monomial(const SeedState& st, const LatticeVec& a) {
  const Seed& t0 = st.initial();
  require(a.size() == static_cast<std::size_t>(t0.n),
          "state_monomial: wrong index set");
  long long corr = 0;
  for (int i = 0; i < t0.n; ++i)
    for (int j = i + 1; j < t0.n; ++j)
      if (a[static_cast<std::size_t>(i)] != 0 && a[static_cast<std::size_t>(j)] != 0)
        corr += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)] *
                st.cur.lambda(unit_vec(t0.n, i), unit_vec(t0.n, j));
  LaurentElement z = LaurentElement::unit(t0.n, t0.id);
  for (int i = 0; i < t0.n; ++i) {
    const long long ai = a[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    if (st.cur.is_unfrozen(i)) {
      require(ai > 0, "state_monomial: negative unfrozen exponent");
      z = twisted_mul(z, twisted_pow(st.vars[static_cast<std::size_t>(i)], ai,
                                     t0.lambda),
                      t0.lambda);
    } else {
      // Frozen variables stay monomial x^{f_i}, so powers need no correction.
      z = twisted_mul(z,
                      LaurentElement::monomial(t0.n, unit_vec(t0.n, i, ai),
                                               VCoeff::one(), t0.id),
                      t0.lambda);
    }
  }
  return z.scaled(VCoeff::vpow(-corr));
}

inline SeedState mutate_state(const SeedState& st, int k) {
  const Seed& t0 = st.initial();
  const Seed& t = st.cur;
  require(k >= 0 && k < t.n && t.is_unfrozen(k), "mutate_state: bad vertex");
  SeedState out;
  out.t0 = st.t0;
  out.cur = t.mutate(k);
  out.word = st.word;
  out.word.push_back(k);

  // Exchange relation: x_k' is the normalized two-term sum divided by x_k.
  LatticeVec wp(static_cast<std::size_t>(t.n), 0), wm = wp;
  for (int i = 0; i < t.n; ++i) {
    if (i == k) continue;
    const Rat bik = t.b(i, k);
    if (bik > 0) wp[static_cast<std::size_t>(i)] = rat_to_ll(bik);
    if (bik < 0) wm[static_cast<std::size_t>(i)] = -rat_to_ll(bik);
  }
  const LatticeVec fk = unit_vec(t.n, k);
  LaurentElement num =
      state_monomial(st, wp).scaled(VCoeff::vpow(t.lambda(wp, fk))) +
      state_monomial(st, wm).scaled(VCoeff::vpow(t.lambda(wm, fk)));
  LaurentElement xk_new =
      exact_div(num, st.vars[static_cast<std::size_t>(k)], t0.lambda);

  out.vars = st.vars;
  out.vars[static_cast<std::size_t>(k)] = std::move(xk_new);

  // c-vector recursion, the entrywise rule applied to the principal rows.
  const std::size_t r = t.uf.size();
  const int kp = t.uf_pos[static_cast<std::size_t>(k)];
  out.cmat.assign(r, std::vector<long long>(r, 0));
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t j = 0; j < r; ++j) {
      const long long c = st.cmat[p][j];
      if (static_cast<int>(j) == kp) {
        out.cmat[p][j] = -c;
      } else {
        const long long bkj = t.b_int(k, t.uf[j]);
        out.cmat[p][j] = c + pos_part(st.cmat[p][static_cast<std::size_t>(kp)]) *
                                 pos_part(bkj) -
                         pos_part(-st.cmat[p][static_cast<std::size_t>(kp)]) *
                             pos_part(-bkj);
      }
    }
  return out;
}

inline SeedState mutate_word(const SeedState& st, const std::vector<int>& word) {
  SeedState s = st;
  for (int k : word) s = mutate_state(s, k);
  return s;
}

inline LatticeVec g_vector(const SeedState& st, int i) {
  return degree_of(st.vars[static_cast<std::size_t>(i)], st.initial());
}

inline PointedElement f_polynomial(const SeedState& st, int i) {
  return extract_pointed(st.vars[static_cast<std::size_t>(i)], st.initial());
}

// One mutation step of the change-of-torus map: rewrites z, a Laurent element
// of LP(t), in the torus of t' = mu_k t.  Throws InexactDivision when z is
// not a Laurent polynomial in the variables of t'.
inline LaurentElement transport_step(const LaurentElement& z, const Seed& t,
                                     const Seed& tp, int k) {
  require(tp.n == t.n, "transport_step: seed mismatch");
  const int n = t.n;
  const std::size_t sk = static_cast<std::size_t>(k);
  // Old variable x_k(t) expressed in LP(t'): two monomials from the exchange
  // relation of t' at k.
  LatticeVec vp = unit_vec(n, k, -1), vm = vp;
  for (int i = 0; i < n; ++i) {
    if (i == k) continue;
    const Rat bik = tp.b(i, k);
    if (bik > 0) vp[static_cast<std::size_t>(i)] += rat_to_ll(bik);
    if (bik < 0) vm[static_cast<std::size_t>(i)] += -rat_to_ll(bik);
  }
  LaurentElement xk_old = LaurentElement::monomial(n, vp, VCoeff::one(), tp.id);
  xk_old += LaurentElement::monomial(n, vm, VCoeff::one(), tp.id);

  long long dk = 0;
  for (const auto& [m, c] : z.t) dk = std::max(dk, -m[sk]);

  std::vector<LaurentElement> xk_pows{LaurentElement::unit(n, tp.id)};
  auto xk_pow = [&](long long e) -> const LaurentElement& {
    while (static_cast<long long>(xk_pows.size()) <= e)
      xk_pows.push_back(twisted_mul(xk_pows.back(), xk_old, tp.lambda));
    return xk_pows[static_cast<std::size_t>(e)];
  };

  const LatticeVec fk = unit_vec(n, k);
  LaurentElement out(n, tp.id);
  for (const auto& [m, c] : z.t) {
    // z * x_k^{dk} termwise: v^{Lambda_t(m, dk f_k)} x^{m + dk f_k}.
    LatticeVec mt = m;
    mt[sk] += dk;
    VCoeff cc = c.shifted(t.lambda(m, vec_scale(dk, fk)));
    LatticeVec u = mt;
    u[sk] = 0;
    // x^{mt} = v^{-Lambda_t(u, mt_k f_k)} x^u * x_k^{mt_k}; off-k coordinates
    // carry the same form in t and t'.
    cc = cc.shifted(-t.lambda(u, vec_scale(mt[sk], fk)));
    LaurentElement term = twisted_mul(
        LaurentElement::monomial(n, u, cc, tp.id), xk_pow(mt[sk]), tp.lambda);
    out += term;
  }
  if (dk == 0) return out;
  return exact_div(out, xk_pow(dk), tp.lambda);
}

// Transports z in LP(start) along a mutation word; returns the expansion in
// the torus of the final seed.
inline LaurentElement transport_word(LaurentElement z, Seed t,
                                     const std::vector<int>& word) {
  for (int k : word) {
    Seed tp = t.mutate(k);
    z = transport_step(z, t, tp, k);
    t = std::move(tp);
  }
  return z;
}

inline bool is_laurent_in(const LaurentElement& z, const Seed& t,
                          const std::vector<int>& word_from_t) {
  try {
    transport_word(z, t, word_from_t);
    return true;
  } catch (const InexactDivision&) {
    return false;
  }
}

// Upper-bound membership at the initial fork: Laurent in t0 and in every
// adjacent seed mu_k t0.
inline bool starfish_member(const LaurentElement& z, const Seed& t0) {
  for (int k : t0.uf)
    if (!is_laurent_in(z, t0, {k})) return false;
  return true;
}

}  // namespace cluskit
