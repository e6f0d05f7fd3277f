#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cluskit/freezing.hpp"
#include "cluskit/theta.hpp"

namespace cluskit {

// A family of pointed elements indexed by degree, generated lazily.  gen
// returns the element pointed at g, or nullopt when the family has no
// element of that degree (or the construction is inconclusive there).
struct PointedSet {
  Seed seed;
  std::function<std::optional<LaurentElement>(const LatticeVec&)> gen;
  std::shared_ptr<std::map<LatticeVec, std::optional<LaurentElement>>> cache =
      std::make_shared<std::map<LatticeVec, std::optional<LaurentElement>>>();

  const std::optional<LaurentElement>& at(const LatticeVec& g) const {
    auto it = cache->find(g);
    if (it != cache->end()) return it->second;
    std::optional<LaurentElement> z = gen(g);
    if (z && extract_pointed(*z, seed).g != g)
      throw DomainError("PointedSet: generator returned element not pointed at " +
                        vec_to_string(g));
    return cache->emplace(g, std::move(z)).first->second;
  }
};

// All g with |g_i| <= r, in lexicographic order.
inline std::vector<LatticeVec> degree_box(int dim, long long r) {
  std::vector<LatticeVec> out;
  LatticeVec g(dim, -r);
  for (;;) {
    out.push_back(g);
    int i = dim - 1;
    while (i >= 0 && g[i] == r) g[i--] = -r;
    if (i < 0) break;
    ++g[i];
  }
  return out;
}

// Localized cluster monomials: for g in the g-vector fan, the monomial of
// the chamber's cluster with exponent vector solving Gt a = g.  Frozen
// exponents may be negative, unfrozen ones may not.
inline PointedSet make_cluster_monomial_set(const Seed& s, int max_depth) {
  PointedSet S;
  S.seed = s;
  const auto graph = std::make_shared<ExchangeGraph>(build_graph(s, max_depth));
  S.gen = [s, graph](const LatticeVec& g) -> std::optional<LaurentElement> {
    ChamberTheta ct = theta_cluster_chamber(s, g, *graph);
    if (!ct.found) return std::nullopt;
    return ct.value;
  };
  return S;
}

// Theta functions of a consistent diagram, truncated at its order, based in
// the interior of the all-positive chamber.
inline PointedSet make_theta_set(const ScatteringDiagram& D) {
  PointedSet S;
  S.seed = D.seed;
  const LatticeVec target(D.slice.size(), 1);
  const ScatteringDiagram Dc = D;
  S.gen = [Dc, target](const LatticeVec& g) -> std::optional<LaurentElement> {
    return theta_resampled(g, target, Dc, Dc.K);
  };
  return S;
}

inline std::vector<int> pointed_support(const LaurentElement& z, const Seed& s) {
  return extract_pointed(z, s).support(s);
}

inline LatticeVec pointed_supp_dim(const LaurentElement& z, const Seed& s) {
  return extract_pointed(z, s).supp_dim(s);
}

// Greedy elimination of dominance-maximal degrees.  Every pointed family
// member has leading coefficient 1, so subtracting c * s_g removes the term
// at g and introduces only strictly smaller degrees; for a genuine basis the
// loop terminates by the finiteness of dominance intervals.
using TransitionRow = std::map<LatticeVec, VCoeff>;

inline TransitionRow decompose(const LaurentElement& z, const PointedSet& S,
                               int max_steps = 4096) {
  LaurentElement r = z;
  TransitionRow row;
  while (!r.is_zero()) {
    if (--max_steps < 0)
      throw NotInSpanError("decompose: elimination does not terminate");
    // A maximal key: nothing else strictly above it in dominance order.
    const LatticeVec* gmax = nullptr;
    for (const auto& [g, c] : r.t) {
      bool maximal = true;
      for (const auto& [m, cm] : r.t)
        if (m != g && S.seed.dominance_leq(g, m)) {
          maximal = false;
          break;
        }
      if (maximal) {
        gmax = &g;
        break;
      }
    }
    if (!gmax) throw NotInSpanError("decompose: no maximal degree");
    const LatticeVec g = *gmax;
    const auto& sg = S.at(g);
    if (!sg)
      throw NotInSpanError("decompose: family has no element pointed at " +
                           vec_to_string(g));
    const VCoeff c = r.t.at(g);
    r -= sg->scaled(c);
    row.emplace(g, c);
  }
  return row;
}

// Row is unitriangular for degree g0: coefficient 1 there, everything else
// strictly below in dominance order.
inline bool is_unitriangular_row(const TransitionRow& row, const LatticeVec& g0,
                                 const Seed& s) {
  const auto it = row.find(g0);
  if (it == row.end() || !it->second.is_one()) return false;
  for (const auto& [g, c] : row)
    if (g != g0 && !s.dominance_leq(g, g0)) return false;
  return true;
}

// Off-diagonal coefficients lie in v^{-1} Z[v^{-1}].
inline bool row_coeffs_lowered(const TransitionRow& row, const LatticeVec& g0) {
  for (const auto& [g, c] : row) {
    if (g == g0) continue;
    if (!c.c.empty() && c.c.rbegin()->first > -1) return false;
  }
  return true;
}

inline bool vcoeff_nonneg(const VCoeff& c) {
  for (const auto& [e, a] : c.c)
    if (a < 0) return false;
  return true;
}

inline bool laurent_nonneg(const LaurentElement& z) {
  for (const auto& [g, c] : z.t)
    if (!vcoeff_nonneg(c)) return false;
  return true;
}

struct CheckReport {
  int checked = 0;
  int fast_path = 0;
  bool ok = true;
  std::vector<std::string> witnesses;

  void fail(std::string w) {
    ok = false;
    witnesses.push_back(std::move(w));
  }
};

namespace detail {

inline std::vector<int> support_union(std::vector<int> a,
                                      const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline bool support_subset(const std::vector<int>& a,
                           const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool vec_leq(const LatticeVec& a, const LatticeVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

}  // namespace detail

// Products of family members decompose with support inside the union of the
// factors' supports, and support dimensions add, strictly off the expected
// degree.  When everything in sight has nonnegative coefficients the
// conclusion is automatic and the per-term comparisons are skipped.
inline CheckReport check_local_support(
    const PointedSet& S,
    const std::vector<std::pair<LatticeVec, LatticeVec>>& pairs,
    bool use_fast_path = true) {
  CheckReport rep;
  const Seed& s = S.seed;
  for (const auto& [g1, g2] : pairs) {
    ++rep.checked;
    const auto &z1 = S.at(g1), &z2 = S.at(g2);
    if (!z1 || !z2) {
      rep.fail("missing factor at " + vec_to_string(!z1 ? g1 : g2));
      continue;
    }
    const LaurentElement z = twisted_mul(*z1, *z2, s.lambda)
                                 .scaled(VCoeff::vpow(-s.lambda(g1, g2)));
    TransitionRow row;
    try {
      row = decompose(z, S);
    } catch (const NotInSpanError& e) {
      rep.fail("product at " + vec_to_string(g1) + " * " + vec_to_string(g2) +
               ": " + e.what());
      continue;
    }
    const LatticeVec g12 = vec_add(g1, g2);
    if (!is_unitriangular_row(row, g12, s))
      rep.fail("product row not unitriangular at " + vec_to_string(g12));
    if (use_fast_path && laurent_nonneg(*z1) && laurent_nonneg(*z2)) {
      bool pos = true;
      for (const auto& [g, c] : row)
        pos = pos && vcoeff_nonneg(c) && laurent_nonneg(*S.at(g));
      if (pos) {
        ++rep.fast_path;
        continue;
      }
    }
    const auto U =
        detail::support_union(pointed_support(*z1, s), pointed_support(*z2, s));
    const LatticeVec dsum =
        vec_add(pointed_supp_dim(*z1, s), pointed_supp_dim(*z2, s));
    for (const auto& [g, c] : row) {
      const auto& sg = S.at(g);
      if (!sg) continue;  // decompose already used it; defensive
      const auto sup = pointed_support(*sg, s);
      if (!detail::support_subset(sup, U))
        rep.fail("support of member at " + vec_to_string(g) +
                 " leaves the union for " + vec_to_string(g1) + " * " +
                 vec_to_string(g2));
      const LatticeVec sd = pointed_supp_dim(*sg, s);
      if (!detail::vec_leq(sd, dsum))
        rep.fail("support dimension at " + vec_to_string(g) +
                 " exceeds the sum for " + vec_to_string(g1) + " * " +
                 vec_to_string(g2));
      else if (g != g12 && sd == dsum)
        rep.fail("support dimension not strictly smaller at " +
                 vec_to_string(g) + " for " + vec_to_string(g1) + " * " +
                 vec_to_string(g2));
    }
  }
  return rep;
}

// Rows of Z over S stay inside each z_g's support, with dimensions bounded
// by suppDim z_g, strictly off the diagonal.
inline CheckReport check_local_transition(const PointedSet& Z,
                                          const PointedSet& S,
                                          const std::vector<LatticeVec>& degrees) {
  CheckReport rep;
  const Seed& s = S.seed;
  for (const auto& g : degrees) {
    ++rep.checked;
    const auto& zg = Z.at(g);
    if (!zg) {
      rep.fail("missing element at " + vec_to_string(g));
      continue;
    }
    TransitionRow row;
    try {
      row = decompose(*zg, S);
    } catch (const NotInSpanError& e) {
      rep.fail("row at " + vec_to_string(g) + ": " + e.what());
      continue;
    }
    if (!is_unitriangular_row(row, g, s))
      rep.fail("row not unitriangular at " + vec_to_string(g));
    const auto U = pointed_support(*zg, s);
    const LatticeVec dz = pointed_supp_dim(*zg, s);
    for (const auto& [gp, c] : row) {
      const auto& sgp = S.at(gp);
      if (!sgp) continue;
      if (!detail::support_subset(pointed_support(*sgp, s), U))
        rep.fail("transition support at " + vec_to_string(gp) +
                 " leaves supp of " + vec_to_string(g));
      const LatticeVec sd = pointed_supp_dim(*sgp, s);
      if (!detail::vec_leq(sd, dz))
        rep.fail("transition dimension at " + vec_to_string(gp) +
                 " exceeds that of " + vec_to_string(g));
      else if (gp != g && sd == dz)
        rep.fail("transition dimension not strictly smaller at " +
                 vec_to_string(gp) + " under " + vec_to_string(g));
    }
  }
  return rep;
}

// Image family z_F s_g over the seed with F frozen; members stay pointed at
// the same degrees and are never zero (the leading term survives).
inline PointedSet basis_by_freezing(const PointedSet& S,
                                    const std::vector<int>& F) {
  PointedSet R;
  R.seed = S.seed.freeze(F);
  const Seed ambient = S.seed;
  const std::uint64_t fid = R.seed.id;
  R.gen = [S, ambient, F, fid](const LatticeVec& g) -> std::optional<LaurentElement> {
    const auto& z = S.at(g);
    if (!z) return std::nullopt;
    return retag(freeze_pointed(*z, ambient, F), fid);
  };
  return R;
}

// The basis-wise freezing operator: decompose, then freeze each member at
// its own degree.  Not multiplicative in general.
inline LaurentElement freeze_along_basis(const LaurentElement& z,
                                         const PointedSet& S,
                                         const std::vector<int>& F) {
  const TransitionRow row = decompose(z, S);
  LaurentElement out(S.seed.n, S.seed.id);
  for (const auto& [g, c] : row)
    out += freeze_pointed(*S.at(g), S.seed, F).scaled(c);
  return out;
}

// Localization along newly frozen directions: shift g by sum d_j f_j until
// no j in F meets the support, then divide the monomial back off.  The
// result must not depend on pushing the shift further; if the support never
// clears within d_max the construction is inconclusive at this degree.
struct LocalizedElement {
  bool ok = false;
  LatticeVec shift;
  LaurentElement value;
  std::string note;
};

inline LocalizedElement localize_at(const PointedSet& S,
                                    const std::vector<int>& F,
                                    const LatticeVec& g, long long d_max) {
  const Seed& s = S.seed;
  LocalizedElement out;
  LatticeVec D(static_cast<std::size_t>(s.n), 0);
  const auto shifted_value =
      [&](const LatticeVec& shift) -> std::optional<LaurentElement> {
    const auto& sh = S.at(vec_add(g, shift));
    if (!sh) return std::nullopt;
    LatticeVec neg = shift;
    for (auto& x : neg) x = -x;
    const LaurentElement mono =
        LaurentElement::monomial(s.n, neg, VCoeff::one(), s.id);
    return twisted_mul(mono, *sh, s.lambda)
        .scaled(VCoeff::vpow(s.lambda(shift, g)));
  };
  for (;;) {
    const auto& sh = S.at(vec_add(g, D));
    if (!sh) {
      out.note = "family has no element at " + vec_to_string(vec_add(g, D));
      return out;
    }
    const auto sup = pointed_support(*sh, s);
    int bump = -1;
    for (int j : F)
      if (std::find(sup.begin(), sup.end(), j) != sup.end()) {
        bump = j;
        break;
      }
    if (bump < 0) break;
    if (++D[static_cast<std::size_t>(bump)] > d_max) {
      out.note = "support at vertex " + std::to_string(bump) +
                 " did not clear within d_max";
      return out;
    }
  }
  const auto v0 = shifted_value(D);
  LatticeVec D1 = D;
  for (int j : F) ++D1[static_cast<std::size_t>(j)];
  const auto v1 = shifted_value(D1);
  if (!v0 || !v1) {
    out.note = "missing shifted element";
    return out;
  }
  LaurentElement diff = *v0;
  diff -= *v1;
  if (!diff.is_zero()) {
    out.note = "localization depends on the shift at " + vec_to_string(g);
    return out;
  }
  out.ok = true;
  out.shift = D;
  out.value = *v0;
  return out;
}

inline PointedSet basis_by_localization(const PointedSet& S,
                                        const std::vector<int>& F,
                                        long long d_max) {
  PointedSet R;
  R.seed = S.seed.freeze(F);
  const std::uint64_t fid = R.seed.id;
  R.gen = [S, F, d_max, fid](const LatticeVec& g) -> std::optional<LaurentElement> {
    const LocalizedElement le = localize_at(S, F, g, d_max);
    if (!le.ok) return std::nullopt;
    return retag(le.value, fid);
  };
  return R;
}

// v^{-lambda(f_j, g)} x_j * s_g = s_{g + f_j} along a frozen direction j.
inline CheckReport check_factorization(const PointedSet& S, int j,
                                       const std::vector<LatticeVec>& degrees) {
  CheckReport rep;
  const Seed& s = S.seed;
  const LatticeVec fj = unit_vec(s.n, j);
  const LaurentElement xj =
      LaurentElement::monomial(s.n, fj, VCoeff::one(), s.id);
  for (const auto& g : degrees) {
    const auto& sg = S.at(g);
    const auto& tg = S.at(vec_add(g, fj));
    if (!sg || !tg) continue;
    ++rep.checked;
    LaurentElement lhs =
        twisted_mul(xj, *sg, s.lambda).scaled(VCoeff::vpow(-s.lambda(fj, g)));
    lhs -= *tg;
    if (!lhs.is_zero())
      rep.fail("factorization fails at " + vec_to_string(g) +
               " in direction " + std::to_string(j));
  }
  return rep;
}

// s_{g + d f_k} = v^{-lambda(d f_k, g)} x_k^d * (z_{k} s_g) whenever k avoids
// the support of the shifted member.  Degrees where the support condition
// fails are skipped, not judged.
inline CheckReport check_shift_product(const PointedSet& S, int k, long long d,
                                       const std::vector<LatticeVec>& degrees) {
  CheckReport rep;
  const Seed& s = S.seed;
  LatticeVec dfk(static_cast<std::size_t>(s.n), 0);
  dfk[static_cast<std::size_t>(k)] = d;
  const std::vector<int> F{k};
  for (const auto& g : degrees) {
    const auto& sg = S.at(g);
    const auto& tg = S.at(vec_add(g, dfk));
    if (!sg || !tg) continue;
    const auto sup = pointed_support(*tg, s);
    if (std::find(sup.begin(), sup.end(), k) != sup.end()) continue;
    ++rep.checked;
    const LaurentElement zk = freeze_pointed(*sg, s, F);
    const LaurentElement xkd =
        LaurentElement::monomial(s.n, dfk, VCoeff::one(), s.id);
    LaurentElement lhs = twisted_mul(xkd, zk, s.lambda)
                             .scaled(VCoeff::vpow(-s.lambda(dfk, g)));
    lhs -= *tg;
    if (!lhs.is_zero())
      rep.fail("shift product fails at " + vec_to_string(g) + " with d=" +
               std::to_string(d) + " at vertex " + std::to_string(k));
  }
  return rep;
}

// Both families exist at every degree of the box and each decomposes over
// the other with unitriangular rows.
inline CheckReport equal_spans_on_box(const PointedSet& A, const PointedSet& B,
                                      const std::vector<LatticeVec>& degrees) {
  CheckReport rep;
  for (const auto& g : degrees) {
    ++rep.checked;
    const auto &a = A.at(g), &b = B.at(g);
    if (!a || !b) {
      rep.fail("degree " + vec_to_string(g) + " present in only one family");
      continue;
    }
    try {
      if (!is_unitriangular_row(decompose(*a, B), g, B.seed))
        rep.fail("A over B not unitriangular at " + vec_to_string(g));
      if (!is_unitriangular_row(decompose(*b, A), g, A.seed))
        rep.fail("B over A not unitriangular at " + vec_to_string(g));
    } catch (const NotInSpanError& e) {
      rep.fail("span differs at " + vec_to_string(g) + ": " + e.what());
    }
  }
  return rep;
}

}  // namespace cluskit
