#pragma once

#include "cluskit/common.hpp"
#include "cluskit/laurent.hpp"
#include "cluskit/linalg.hpp"

namespace cluskit {

inline long long pos_part(long long x) { return x > 0 ? x : 0; }
inline Rat pos_part(const Rat& x) { return x > 0 ? x : Rat(0); }
inline int sign_of(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// A seed: vertex set {0..n-1}, unfrozen subset, extended exchange matrix B
// (full square matrix; entries in columns of unfrozen vertices are integers,
// frozen-frozen entries may be rational), skew-symmetrizers d, and an
// optional compatible quantization form Lambda.
struct Seed {
  int n = 0;
  std::vector<int> uf;  // sorted unfrozen vertices
  RatMat B;             // n x n
  std::vector<long long> d;
  SkewForm lambda;
  std::vector<std::string> labels;

  // Derived data, filled by init().
  std::vector<char> uf_mask;
  std::vector<int> uf_pos;        // vertex -> position in uf, or -1
  IntMat btilde;                  // n x r integer matrix, columns p*e_k
  RatMat btilde_left_inverse;     // r x n
  std::vector<long long> dd;      // compatibility scalars per unfrozen vertex
  std::uint64_t id = 0;

  int rank_uf() const { return static_cast<int>(uf.size()); }
  bool is_unfrozen(int i) const { return uf_mask[static_cast<std::size_t>(i)]; }

  Rat b(int i, int j) const {
    return B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  long long b_int(int i, int j) const { return rat_to_ll(b(i, j)); }

  void init() {
    const std::size_t un = static_cast<std::size_t>(n);
    require(n >= 1, "seed needs at least one vertex");
    require(B.size() == un, "B must be n x n");
    for (const auto& row : B) require(row.size() == un, "B must be n x n");
    require(d.size() == un, "d must have n entries");
    for (long long di : d) require(di > 0, "skew-symmetrizers must be positive");
    std::sort(uf.begin(), uf.end());
    require(std::unique(uf.begin(), uf.end()) == uf.end(),
            "duplicate unfrozen vertex");
    for (int k : uf) require(k >= 0 && k < n, "unfrozen vertex out of range");
    if (labels.empty())
      for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
    require(labels.size() == un, "labels must have n entries");

    uf_mask.assign(un, 0);
    uf_pos.assign(un, -1);
    for (std::size_t p = 0; p < uf.size(); ++p) {
      uf_mask[static_cast<std::size_t>(uf[p])] = 1;
      uf_pos[static_cast<std::size_t>(uf[p])] = static_cast<int>(p);
    }

    // d_i b_ij = -d_j b_ji.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        require(Rat(d[static_cast<std::size_t>(i)]) * b(i, j) ==
                    -Rat(d[static_cast<std::size_t>(j)]) * b(j, i),
                "B is not skew-symmetrizable by d");

    // Unfrozen columns must be integral; they form the extended matrix.
    btilde.assign(un, std::vector<long long>(uf.size(), 0));
    for (std::size_t p = 0; p < uf.size(); ++p)
      for (int i = 0; i < n; ++i) {
        require(rat_is_integer(b(i, uf[p])), "unfrozen column of B not integral");
        btilde[static_cast<std::size_t>(i)][p] = b_int(i, uf[p]);
      }

    if (!uf.empty()) {
      RatMat bt = rat_mat(un, uf.size());
      for (std::size_t i = 0; i < un; ++i)
        for (std::size_t p = 0; p < uf.size(); ++p) bt[i][p] = btilde[i][p];
      require(mat_rank(bt) == uf.size(), "extended exchange matrix not full rank");
      // Left inverse (Bt^T Bt)^{-1} Bt^T used by the dominance-order solver.
      RatMat btt = mat_transpose(bt);
      auto gram_inv = mat_inverse(mat_mul(btt, bt));
      require(gram_inv.has_value(), "extended matrix Gram not invertible");
      btilde_left_inverse = mat_mul(*gram_inv, btt);
    } else {
      btilde_left_inverse.clear();
    }

    check_compatibility();
    id = fnv1a64(serialize());
  }

  // Lambda(f_i, p*e_k) = delta_ik dd_k with dd_k > 0, for every unfrozen k.
  void check_compatibility() {
    dd.assign(static_cast<std::size_t>(n), 0);
    if (lambda.is_zero()) return;
    require(lambda.lambda.size() == static_cast<std::size_t>(n),
            "Lambda must be n x n");
    for (std::size_t p = 0; p < uf.size(); ++p) {
      const int k = uf[p];
      for (int i = 0; i < n; ++i) {
        long long v = 0;
        for (int j = 0; j < n; ++j)
          v += lambda.lambda[static_cast<std::size_t>(i)]
                            [static_cast<std::size_t>(j)] *
               btilde[static_cast<std::size_t>(j)][p];
        if (i == k) {
          require(v > 0, "(B,Lambda) not compatible: diagonal scalar not positive");
          dd[static_cast<std::size_t>(k)] = v;
        } else {
          require(v == 0, "(B,Lambda) not compatible: off-diagonal pairing");
        }
      }
    }
  }

  bool is_quantum() const { return !lambda.is_zero(); }

  // p* e_k summed: p*(nvec) for nvec indexed by unfrozen positions.
  LatticeVec p_star(const LatticeVec& nvec) const {
    require(nvec.size() == uf.size(), "p_star: wrong index set");
    LatticeVec r(static_cast<std::size_t>(n), 0);
    for (std::size_t p = 0; p < uf.size(); ++p) {
      if (nvec[p] == 0) continue;
      for (int i = 0; i < n; ++i)
        r[static_cast<std::size_t>(i)] += nvec[p] * btilde[static_cast<std::size_t>(i)][p];
    }
    return r;
  }

  // <m, nvec> with f_i = e_i^* / d_i; rational in general.
  Rat pairing(const LatticeVec& m, const LatticeVec& nvec) const {
    require(m.size() == static_cast<std::size_t>(n) && nvec.size() == uf.size(),
            "pairing: wrong index set");
    Rat s = 0;
    for (std::size_t p = 0; p < uf.size(); ++p) {
      if (nvec[p] == 0) continue;
      const std::size_t k = static_cast<std::size_t>(uf[p]);
      s += Rat(m[k] * nvec[p], d[k]);
    }
    return s;
  }

  // Solves g_small = g_big + p*nvec; nonneg integral solution means
  // g_small dominated by g_big.
  std::optional<LatticeVec> dominance_witness(const LatticeVec& g_small,
                                              const LatticeVec& g_big) const {
    if (g_small.size() != static_cast<std::size_t>(n) ||
        g_big.size() != static_cast<std::size_t>(n))
      throw DimensionError("dominance_witness: wrong index set");
    const LatticeVec diff = vec_sub(g_small, g_big);
    if (uf.empty()) {
      if (vec_is_zero(diff)) return LatticeVec{};
      return std::nullopt;
    }
    LatticeVec nvec(uf.size(), 0);
    for (std::size_t p = 0; p < uf.size(); ++p) {
      Rat s = 0;
      for (int i = 0; i < n; ++i)
        s += btilde_left_inverse[p][static_cast<std::size_t>(i)] *
             diff[static_cast<std::size_t>(i)];
      if (!rat_is_integer(s)) return std::nullopt;
      nvec[p] = rat_to_ll(s);
      if (nvec[p] < 0) return std::nullopt;
    }
    if (p_star(nvec) != diff) return std::nullopt;
    return nvec;
  }

  bool dominance_leq(const LatticeVec& g_small, const LatticeVec& g_big) const {
    return dominance_witness(g_small, g_big).has_value();
  }

  Seed mutate(int k) const {
    require(k >= 0 && k < n && is_unfrozen(k), "mutation only at unfrozen vertices");
    Seed s = mutated_eps(k, +1);
    // The result must not depend on the auxiliary sign.
    Seed s2 = mutated_eps(k, -1);
    require(s.B == s2.B, "mutation depends on auxiliary sign (B)");
    require(s.lambda.lambda == s2.lambda.lambda,
            "mutation depends on auxiliary sign (Lambda)");
    s.init();
    return s;
  }

  Seed mutated_eps(int k, int eps) const {
    const std::size_t un = static_cast<std::size_t>(n);
    RatMat E = rat_identity(un), F = rat_identity(un);
    const std::size_t sk = static_cast<std::size_t>(k);
    E[sk][sk] = -1;
    F[sk][sk] = -1;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      E[static_cast<std::size_t>(i)][sk] = pos_part(Rat(-eps) * b(i, k));
      F[sk][static_cast<std::size_t>(i)] = pos_part(Rat(eps) * b(k, i));
    }
    Seed s;
    s.n = n;
    s.uf = uf;
    s.d = d;
    s.labels = labels;
    s.B = mat_mul(mat_mul(E, B), F);
    if (!lambda.is_zero()) {
      RatMat lam = mat_mul(mat_mul(mat_transpose(E), to_rat(lambda.lambda)), E);
      IntMat li(un, std::vector<long long>(un, 0));
      for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j) li[i][j] = rat_to_ll(lam[i][j]);
      s.lambda = SkewForm(std::move(li));
    }
    return s;
  }

  Seed freeze(const std::vector<int>& F) const {
    Seed s = *this;
    std::vector<int> keep;
    for (int k : uf) {
      bool frozen = std::find(F.begin(), F.end(), k) != F.end();
      if (!frozen) keep.push_back(k);
    }
    for (int k : F)
      require(is_unfrozen(k), "freeze: vertex " + std::to_string(k + 1) +
                                  " is not unfrozen");
    s.uf = keep;
    s.uf_mask.clear();
    s.init();
    return s;
  }

  std::string serialize() const {
    std::ostringstream os;
    os << n << ';';
    for (int k : uf) os << k << ',';
    os << ';';
    for (const auto& row : B) {
      for (const auto& x : row) os << rat_to_string(x) << ',';
      os << '|';
    }
    os << ';';
    for (long long x : d) os << x << ',';
    os << ';';
    for (const auto& row : lambda.lambda) {
      for (long long x : row) os << x << ',';
      os << '|';
    }
    return os.str();
  }
};

inline Seed make_seed(int n, std::vector<int> uf, RatMat B,
                      std::vector<long long> d, IntMat lambda = {},
                      std::vector<std::string> labels = {}) {
  Seed s;
  s.n = n;
  s.uf = std::move(uf);
  s.B = std::move(B);
  s.d = std::move(d);
  if (!lambda.empty()) s.lambda = SkewForm(std::move(lambda));
  s.labels = std::move(labels);
  s.init();
  return s;
}

inline RatMat rat_mat_from_int(const std::vector<std::vector<int>>& a) {
  RatMat m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i].assign(a[i].begin(), a[i].end());
  return m;
}

}  // namespace cluskit
