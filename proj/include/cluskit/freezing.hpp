#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "cluskit/graph.hpp"

namespace cluskit {

// A choice of unfrozen vertices F to freeze; R is what stays mutable.
struct FreezeSpec {
  std::vector<int> F;
  std::vector<int> R;
};

inline FreezeSpec make_freeze_spec(const Seed& s, std::vector<int> F) {
  std::sort(F.begin(), F.end());
  F.erase(std::unique(F.begin(), F.end()), F.end());
  for (int k : F)
    require(s.is_unfrozen(k), "freeze spec: vertices must be unfrozen");
  FreezeSpec spec;
  spec.F = F;
  for (int k : s.uf)
    if (!std::binary_search(F.begin(), F.end(), k)) spec.R.push_back(k);
  return spec;
}

// Does the witness vector n (indexed by unfrozen slots) touch F?
inline bool witness_meets(const Seed& ambient, const LatticeVec& nvec,
                          const std::vector<int>& F) {
  for (std::size_t j = 0; j < nvec.size(); ++j)
    if (nvec[j] != 0 &&
        std::find(F.begin(), F.end(), ambient.uf[j]) != F.end())
      return true;
  return false;
}

inline LaurentElement retag(LaurentElement z, std::uint64_t sid) {
  z.seed_id = sid;
  return z;
}

// The degree-m freezing operator: drop every summand x^{m+p*n} whose witness
// n meets F.  Terms of z must all be dominated by m.
inline LaurentElement freeze_at(const LaurentElement& z, const LatticeVec& m,
                                const Seed& ambient,
                                const std::vector<int>& F) {
  LaurentElement r(z.n, z.seed_id);
  for (const auto& [u, c] : z.t) {
    const auto nvec = ambient.dominance_witness(u, m);
    if (!nvec)
      throw DomainError("freeze_at: term " + vec_to_string(u) +
                        " not dominated by " + vec_to_string(m));
    if (!witness_meets(ambient, *nvec, F)) r.add_term(u, c);
  }
  return r;
}

inline LaurentElement freeze_pointed(const LaurentElement& z,
                                     const Seed& ambient,
                                     const std::vector<int>& F) {
  return freeze_at(z, degree_of(z, ambient), ambient, F);
}

// Same filter on a coefficient table; keys stay indexed by the original
// unfrozen slots (entries at F are zero after the filter).
inline PointedElement freeze_fpoly(const PointedElement& p, const Seed& ambient,
                                   const std::vector<int>& F) {
  PointedElement r;
  r.g = p.g;
  for (const auto& [nvec, c] : p.f)
    if (!witness_meets(ambient, nvec, F)) r.f.emplace(nvec, c);
  return r;
}

// Reindex a filtered coefficient table to the frozen seed's unfrozen slots.
inline PointedElement restrict_to_frozen(const PointedElement& p,
                                         const Seed& ambient,
                                         const Seed& frozen) {
  PointedElement r;
  r.g = p.g;
  for (const auto& [nvec, c] : p.f) {
    LatticeVec small;
    small.reserve(frozen.uf.size());
    for (std::size_t j = 0; j < nvec.size(); ++j) {
      if (frozen.is_unfrozen(ambient.uf[j]))
        small.push_back(nvec[j]);
      else
        require(nvec[j] == 0, "restrict_to_frozen: witness meets frozen set");
    }
    r.f.emplace(std::move(small), c);
  }
  return r;
}

// Freezing respects the twisted product across matching base degrees.
inline bool check_multiplicativity(const LaurentElement& z1,
                                   const LaurentElement& z2,
                                   const Seed& ambient,
                                   const std::vector<int>& F) {
  const LatticeVec m1 = degree_of(z1, ambient);
  const LatticeVec m2 = degree_of(z2, ambient);
  const LaurentElement lhs =
      twisted_mul(freeze_at(z1, m1, ambient, F), freeze_at(z2, m2, ambient, F),
                  ambient.lambda);
  const LaurentElement rhs = freeze_at(twisted_mul(z1, z2, ambient.lambda),
                                       vec_add(m1, m2), ambient, F);
  return lhs == rhs;
}

// Transport z along the word and freeze there, versus freeze first and
// transport inside the frozen seed; both give the same element.
inline bool freeze_commutes_with_mutation(const LaurentElement& z,
                                          const Seed& t0,
                                          const std::vector<int>& word,
                                          const std::vector<int>& F) {
  for (int k : word)
    if (std::find(F.begin(), F.end(), k) != F.end())
      throw BadWord("freeze_commutes_with_mutation: word touches F");
  Seed t = t0;
  for (int k : word) t = t.mutate(k);
  const LaurentElement lhs =
      freeze_pointed(transport_word(z, t0, word), t, F);
  const Seed ft0 = t0.freeze(F);
  const LaurentElement rhs = transport_word(
      retag(freeze_pointed(z, t0, F), ft0.id), ft0, word);
  return lhs == rhs;
}

struct FrozenMonomialId {
  bool found = false;
  std::vector<int> word;  // R-mutations from the frozen seed, 0-based
  LatticeVec a;           // exponents in that seed's variables
};

// Freeze a localized cluster monomial of the original algebra, then search the
// frozen seed's walk for a seed where the image is again a localized cluster
// monomial.  Degrees prune: exponents must solve the g-vector system in
// integers with nonnegative unfrozen part before the exact product is tried.
inline FrozenMonomialId identify_frozen_cluster_monomial(
    const LaurentElement& z, const Seed& t0, const std::vector<int>& F,
    const ExchangeGraph& g) {
  const Seed ft0 = t0.freeze(F);
  const LaurentElement zf =
      retag(freeze_pointed(z, t0, F), ft0.id);
  const int n = ft0.n;
  const LatticeVec deg = degree_of(zf, ft0);
  RatVec rhs(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p)
    rhs[static_cast<std::size_t>(p)] = deg[static_cast<std::size_t>(p)];
  for (const auto& node : g.nodes) {
    RatMat gmat(static_cast<std::size_t>(n), RatVec(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      const LatticeVec gi = g_vector(node.state, i);
      for (int p = 0; p < n; ++p)
        gmat[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] =
            gi[static_cast<std::size_t>(p)];
    }
    const auto sol = solve_unique(gmat, rhs);
    if (!sol) continue;
    LatticeVec a(static_cast<std::size_t>(n));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const Rat& ai = (*sol)[static_cast<std::size_t>(i)];
      if (!rat_is_integer(ai)) ok = false;
      else {
        a[static_cast<std::size_t>(i)] = rat_to_ll(ai);
        if (ft0.is_unfrozen(i) && a[static_cast<std::size_t>(i)] < 0) ok = false;
      }
    }
    if (!ok) continue;
    if (state_monomial(node.state, a) == zf)
      return FrozenMonomialId{true, node.word, a};
  }
  return {};
}

inline FrozenMonomialId identify_frozen_cluster_monomial(
    const LaurentElement& z, const Seed& t0, const std::vector<int>& F,
    int max_depth) {
  return identify_frozen_cluster_monomial(z, t0, F,
                                          build_graph(t0.freeze(F), max_depth));
}

// Find a word avoiding F that reaches the target seed (up to permutation of
// unfrozen vertices); the walk itself dedups only up to permutations that
// respect the R/F split, so the final match uses the unrestricted key.
inline std::optional<std::vector<int>> reachability_reduction(
    const SeedState& target, const Seed& t0, const std::vector<int>& F,
    int max_depth) {
  const FreezeSpec spec = make_freeze_spec(t0, F);
  const ExchangeGraph g = build_graph(t0, max_depth, spec.R);
  const std::string want = seed_canonical_key(target, t0.uf);
  for (const auto& node : g.nodes)
    if (seed_canonical_key(node.state, t0.uf) == want) return node.word;
  return std::nullopt;
}

}  // namespace cluskit
