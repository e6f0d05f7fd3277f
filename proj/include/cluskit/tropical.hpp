#pragma once

#include "cluskit/state.hpp"

namespace cluskit {

// Tropical transformation of degrees under one mutation at k (at seed t):
//   m'_k = -m_k
//   m'_i = m_i + b_ik [m_k]_+   (b_ik >= 0)
//   m'_i = m_i + b_ik [-m_k]_+  (b_ik <= 0)
inline LatticeVec tropical_transform(const Seed& t, int k, const LatticeVec& m) {
  require(m.size() == static_cast<std::size_t>(t.n), "tropical: wrong index set");
  require(t.is_unfrozen(k), "tropical: mutation at frozen vertex");
  const long long mk = m[static_cast<std::size_t>(k)];
  LatticeVec r = m;
  r[static_cast<std::size_t>(k)] = -mk;
  for (int i = 0; i < t.n; ++i) {
    if (i == k) continue;
    const long long bik = t.b_int(i, k);
    if (bik >= 0)
      r[static_cast<std::size_t>(i)] += bik * pos_part(mk);
    else
      r[static_cast<std::size_t>(i)] += bik * pos_part(-mk);
  }
  return r;
}

// Composite tropical map along a word starting at t.
inline LatticeVec tropical_word(Seed t, const std::vector<int>& word,
                                LatticeVec m) {
  for (int k : word) {
    m = tropical_transform(t, k, m);
    t = t.mutate(k);
  }
  return m;
}

// Matrix of the linear map psi_{t',t}: f_i(t) -> deg^{t'} x_i(t), where both
// seeds are given by words from the same initial seed.  Column i is the
// degree at t' of the i-th cluster variable of t.
inline IntMat psi_linear(const Seed& t0, const std::vector<int>& word_t,
                         const std::vector<int>& word_tp) {
  SeedState st = mutate_word(initial_state(t0), word_t);
  IntMat psi(static_cast<std::size_t>(t0.n),
             std::vector<long long>(static_cast<std::size_t>(t0.n), 0));
  for (int i = 0; i < t0.n; ++i) {
    const LatticeVec g0 = g_vector(st, i);
    const LatticeVec gp = tropical_word(t0, word_tp, g0);
    for (int r = 0; r < t0.n; ++r)
      psi[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] =
          gp[static_cast<std::size_t>(r)];
  }
  return psi;
}

}  // namespace cluskit
