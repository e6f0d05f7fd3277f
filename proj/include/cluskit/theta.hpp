#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "cluskit/freezing.hpp"
#include "cluskit/graph.hpp"
#include "cluskit/linalg.hpp"
#include "cluskit/scattering.hpp"

namespace cluskit {

// Rational point or direction in the slice plane (dimension 1 or 2).
using RVec = std::vector<Rat>;

inline Rat cross2r(const RVec& a, const RVec& b) {
  return a[0] * b[1] - a[1] * b[0];
}

// One linear piece of a broken line, in forward order (from infinity to the
// base point).  wall/bend describe the bend that starts the piece; the first
// piece carries wall = -1.  The attached monomial is c x^m with
// m = base + p*(n) and n nondecreasing along the line.
struct BLSegment {
  LatticeVec m;
  Int c;
  int wall = -1;
  RVec bend;
};

struct BrokenLine {
  LatticeVec m;
  RVec Q;
  std::vector<BLSegment> segs;
  LatticeVec n_total;

  const Int& coeff() const { return segs.back().c; }
  const LatticeVec& final_exponent() const { return segs.back().m; }
};

// Pairing of a rational slice point with a wall normal (slot coordinates of
// D.seed, which may index a subset of the slice after a pushforward).
inline Rat pairing_pos(const ScatteringDiagram& D, const RVec& u,
                       const LatticeVec& nvec) {
  Rat acc = 0;
  for (std::size_t k = 0; k < nvec.size(); ++k) {
    const int v = D.seed.uf[k];
    const auto it = std::find(D.slice.begin(), D.slice.end(), v);
    require(it != D.slice.end(), "pairing_pos: vertex outside slice");
    const std::size_t p =
        static_cast<std::size_t>(std::distance(D.slice.begin(), it));
    acc += u[p] * Rat(nvec[k], D.seed.d[static_cast<std::size_t>(v)]);
  }
  return acc;
}

inline void check_base_point(const ScatteringDiagram& D, const RVec& Q) {
  require(Q.size() == D.slice.size(), "base point: wrong dimension");
  if (Q.size() == 1) {
    if (Q[0] == 0) throw BadBasePoint("base point on a wall");
    return;
  }
  for (const Wall& w : D.walls) {
    const RVec d = {Rat(w.dir[0]), Rat(w.dir[1])};
    if (cross2r(Q, d) == 0) throw BadBasePoint("base point on a wall span");
  }
}

namespace detail {

struct Crossing {
  int wall;
  Rat t;
  RVec x;
};

// All transversal intersections of the ray P + t u (t > 0) with wall
// supports, sorted by t.  Throws BadBasePoint on degenerate geometry that a
// generic base point avoids: passing through the origin or through two wall
// supports at once.
inline std::vector<Crossing> ray_crossings(const ScatteringDiagram& D,
                                           const RVec& P,
                                           const LatticeVec& u) {
  std::vector<Crossing> out;
  if (P.size() == 1) {
    if (u[0] == 0) return out;
    const Rat t = -P[0] / u[0];
    if (t > 0)
      for (int wi = 0; wi < static_cast<int>(D.walls.size()); ++wi)
        out.push_back({wi, t, RVec{Rat(0)}});
    if (out.size() > 1) throw BadBasePoint("stacked walls at the origin");
    return out;
  }
  for (int wi = 0; wi < static_cast<int>(D.walls.size()); ++wi) {
    const Wall& w = D.walls[static_cast<std::size_t>(wi)];
    const long long den = u[0] * w.dir[1] - u[1] * w.dir[0];
    if (den == 0) {
      const RVec d = {Rat(w.dir[0]), Rat(w.dir[1])};
      if (cross2r(P, d) == 0)
        throw BadBasePoint("segment runs inside a wall");
      continue;
    }
    const Rat num = P[0] * Rat(w.dir[1]) - P[1] * Rat(w.dir[0]);
    const Rat t = -num / den;
    if (!(t > 0)) continue;
    const RVec x = {P[0] + t * u[0], P[1] + t * u[1]};
    const Rat s = w.dir[0] != 0 ? x[0] / w.dir[0] : x[1] / w.dir[1];
    if (s == 0) throw BadBasePoint("segment through the origin");
    if (!w.line && s < 0) continue;
    out.push_back({wi, t, x});
  }
  std::sort(out.begin(), out.end(),
            [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i].t == out[i + 1].t)
      throw BadBasePoint("segment through a wall intersection");
  return out;
}

struct Bend {
  int wall;
  RVec x;
  Int factor;
  LatticeVec m_after;
};

struct Enumerator {
  const ScatteringDiagram& D;
  LatticeVec m;
  RVec Q;
  int K;
  std::vector<BrokenLine> found;
  std::vector<Bend> chain;  // backward order: last forward bend first
  std::map<std::pair<int, long long>, YSeries> pow_memo;

  const YSeries& dressed(int wi, long long a) {
    auto it = pow_memo.find({wi, a});
    if (it == pow_memo.end())
      it = pow_memo
               .emplace(std::make_pair(wi, a),
                        ys_pow(D.walls[static_cast<std::size_t>(wi)].fn(K), a,
                               K))
               .first;
    return it->second;
  }

  void record(const LatticeVec& n_total) {
    BrokenLine bl;
    bl.m = m;
    bl.Q = Q;
    bl.n_total = n_total;
    bl.segs.push_back({m, Int(1), -1, {}});
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      bl.segs.push_back(
          {it->m_after, bl.segs.back().c * it->factor, it->wall, it->x});
    found.push_back(std::move(bl));
  }

  // Walk backward from P along +m_cur; n is the bend content still to be
  // unwound, in units of wall normals n0.
  void dfs(const RVec& P, const LatticeVec& n, const LatticeVec& n_total) {
    if (vec_is_zero(n)) {
      record(n_total);
      return;
    }
    const LatticeVec mc = vec_add(m, D.seed.p_star(n));
    const LatticeVec u = slice_coords(D, mc);
    if (vec_is_zero(u)) return;
    for (const auto& cr : ray_crossings(D, P, u)) {
      const Wall& w = D.walls[static_cast<std::size_t>(cr.wall)];
      const long long a =
          std::abs(pairing_int(D.seed, mc, ntilde(D.seed, w.n0)));
      if (a == 0) continue;
      const YSeries& fa = dressed(cr.wall, a);
      for (long long j = 1;; ++j) {
        const LatticeVec jn = vec_scale(j, w.n0);
        LatticeVec rest(n.size());
        bool ok = true;
        for (std::size_t i = 0; i < n.size(); ++i) {
          rest[i] = n[i] - jn[i];
          if (rest[i] < 0) ok = false;
        }
        if (!ok) break;
        const auto cf = fa.c.find(jn);
        if (cf == fa.c.end() || cf->second == 0) continue;
        chain.push_back({cr.wall, cr.x, cf->second, mc});
        dfs(cr.x, rest, n_total);
        chain.pop_back();
      }
    }
  }
};

inline void all_totals(int K, LatticeVec& cur, std::size_t i,
                       std::vector<LatticeVec>& out) {
  if (i == cur.size()) {
    out.push_back(cur);
    return;
  }
  const long long rem = K - total_order(cur);
  for (long long v = 0; v <= rem; ++v) {
    cur[i] = v;
    all_totals(K, cur, i + 1, out);
  }
  cur[i] = 0;
}

}  // namespace detail

// All broken lines for exponent m ending at Q whose final monomial has
// coefficient degree at most K, by backward depth-first search over bend
// events.  Q must be generic for the diagram.
inline std::vector<BrokenLine> enumerate_broken_lines(
    const LatticeVec& m, const RVec& Q, const ScatteringDiagram& D, int K) {
  require(m.size() == static_cast<std::size_t>(D.seed.n),
          "broken lines: exponent dimension mismatch");
  check_base_point(D, Q);
  detail::Enumerator en{D, m, Q, K, {}, {}, {}};
  const int r = D.seed.rank_uf();
  if (vec_is_zero(slice_coords(D, m))) {
    en.record(LatticeVec(static_cast<std::size_t>(r), 0));
  } else {
    std::vector<LatticeVec> totals;
    LatticeVec cur(static_cast<std::size_t>(r), 0);
    detail::all_totals(K, cur, 0, totals);
    for (const LatticeVec& n : totals) en.dfs(Q, n, n);
  }
  std::sort(en.found.begin(), en.found.end(),
            [](const BrokenLine& a, const BrokenLine& b) {
              if (a.n_total != b.n_total) return a.n_total < b.n_total;
              return a.segs.size() < b.segs.size();
            });
  return en.found;
}

// Truncated theta function: the sum of final monomials over all broken
// lines.  Pointed at m with leading coefficient 1.
inline LaurentElement theta(const LatticeVec& m, const RVec& Q,
                            const ScatteringDiagram& D, int K) {
  LaurentElement out(D.seed.n, 0);
  for (const BrokenLine& bl : enumerate_broken_lines(m, Q, D, K))
    out.add_term(bl.final_exponent(), VCoeff(bl.coeff()));
  return out;
}

// Base points with fresh prime denominators per attempt; coordinates stay
// near the integer target while avoiding every wall span.
inline RVec sample_base_point(const LatticeVec& target, int attempt) {
  static const long long primes[] = {10007, 10009, 10037, 10039, 10061,
                                     10067, 10069, 10079, 10091, 10093,
                                     10099, 10103, 10111, 10133, 10139,
                                     10141, 10151, 10159, 10163, 10169};
  RVec q;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const std::size_t pi =
        (2 * static_cast<std::size_t>(attempt) + i) % std::size(primes);
    q.push_back(Rat(target[i]) + Rat(1, primes[pi]));
  }
  return q;
}

inline LaurentElement theta_resampled(const LatticeVec& m,
                                      const LatticeVec& target,
                                      const ScatteringDiagram& D, int K,
                                      int attempts = 8) {
  for (int a = 0;; ++a) {
    try {
      return theta(m, sample_base_point(target, a), D, K);
    } catch (const BadBasePoint&) {
      if (a + 1 >= attempts) throw;
    }
  }
}

// Drop the terms of a pointed element lying more than K below the base.
inline LaurentElement truncate_to_order(const LaurentElement& z,
                                        const LatticeVec& m, const Seed& s,
                                        int K) {
  LaurentElement out(z.n, z.seed_id);
  for (const auto& [g, c] : z.t) {
    const auto wit = s.dominance_witness(g, m);
    require(wit.has_value(), "truncate_to_order: term not dominated");
    if (total_order(*wit) <= K) out.add_term(g, c);
  }
  return out;
}

// Transport along the straight path from Qa to Qb, crossing walls in order.
inline LaurentElement path_transport(const LaurentElement& z,
                                     const ScatteringDiagram& D,
                                     const RVec& Qa, const RVec& Qb, int K) {
  check_base_point(D, Qa);
  check_base_point(D, Qb);
  require(Qa.size() == 2, "path transport needs a two-dimensional slice");
  struct Hit {
    Rat t;
    int wall;
    int eps;
  };
  std::vector<Hit> hits;
  const RVec u = {Qb[0] - Qa[0], Qb[1] - Qa[1]};
  for (int wi = 0; wi < static_cast<int>(D.walls.size()); ++wi) {
    const Wall& w = D.walls[static_cast<std::size_t>(wi)];
    const RVec d = {Rat(w.dir[0]), Rat(w.dir[1])};
    const Rat den = cross2r(u, d);
    if (den == 0) {
      if (cross2r(Qa, d) == 0)
        throw BadBasePoint("path runs inside a wall");
      continue;
    }
    const Rat t = -cross2r(Qa, d) / den;
    if (!(t > 0) || !(t < 1)) continue;
    const RVec x = {Qa[0] + t * u[0], Qa[1] + t * u[1]};
    const Rat s = w.dir[0] != 0 ? x[0] / w.dir[0] : x[1] / w.dir[1];
    if (s == 0) throw BadBasePoint("path through the origin");
    if (!w.line && s < 0) continue;
    const Rat side = pairing_pos(D, u, ntilde(D.seed, w.n0));
    require(side != 0, "path transport: tangent crossing");
    hits.push_back({t, wi, side < 0 ? 1 : -1});
  }
  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return a.t < b.t; });
  for (std::size_t i = 0; i + 1 < hits.size(); ++i)
    if (hits[i].t == hits[i + 1].t)
      throw BadBasePoint("path through a wall intersection");
  LaurentElement out = z;
  for (const Hit& h : hits)
    out = wall_cross(out, D.walls[static_cast<std::size_t>(h.wall)], h.eps,
                     D.seed, K);
  return out;
}

// The freezing operator applied to a theta function agrees with the theta
// function of the pushed-forward diagram, at the same base point.
inline bool freeze_theta_check(const ScatteringDiagram& D,
                               const std::vector<int>& F, const LatticeVec& m,
                               const RVec& Q, int K) {
  const LaurentElement full = theta(m, Q, D, K);
  const LaurentElement pushed = theta(m, Q, freeze_pushforward(D, F), K);
  return freeze_at(full, m, D.seed, F) == pushed;
}

// Search for the least shift d <= d_max with k absent from the support of
// theta_{g + d f_k}; also returns the threshold that the derivative
// inequality over the bend data of theta_g certifies as sufficient.
struct PropertySResult {
  bool found = false;
  long long d = -1;
  long long predicted = 0;
};

inline PropertySResult property_s_search(const ScatteringDiagram& D,
                                         const LatticeVec& g, int k, int K,
                                         long long d_max) {
  const Seed& s = D.seed;
  const int slot = s.uf_pos[static_cast<std::size_t>(k)];
  require(slot >= 0, "property search: vertex is frozen");
  LatticeVec target(static_cast<std::size_t>(D.slice.size()), 1);
  const LaurentElement th0 = theta_resampled(g, target, D, K);

  // Bend contents of theta_g with a nonzero k-component.
  std::vector<LatticeVec> ng;
  for (const auto& [t, c] : th0.t) {
    const auto wit = s.dominance_witness(t, g);
    require(wit.has_value(), "property search: theta not pointed");
    if ((*wit)[static_cast<std::size_t>(slot)] != 0) ng.push_back(*wit);
  }

  PropertySResult res;
  const LatticeVec fk = unit_vec(s.n, k);
  for (const LatticeVec& n : ng) {
    // Enumerate 0 <= n' <= n and 0 < n_j <= n with positive k-component.
    LatticeVec cur(n.size(), 0);
    std::vector<LatticeVec> sub;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n.size()) {
        sub.push_back(cur);
        return;
      }
      for (long long v = 0; v <= n[i]; ++v) {
        cur[i] = v;
        rec(i + 1);
      }
      cur[i] = 0;
    };
    rec(0);
    for (const LatticeVec& nj : sub) {
      if (vec_is_zero(nj) || nj[static_cast<std::size_t>(slot)] <= 0)
        continue;
      const Rat fkn = pairing_rat(s, fk, nj);
      for (const LatticeVec& np : sub) {
        const Rat base = pairing_rat(s, vec_add(g, s.p_star(np)), nj);
        if (base > 0) continue;
        const Rat bound = -base / fkn;
        const Int fl = boost::multiprecision::numerator(bound) /
                       boost::multiprecision::denominator(bound);
        res.predicted = std::max(res.predicted, fl.convert_to<long long>() + 1);
      }
    }
  }

  for (long long d = 0; d <= d_max; ++d) {
    const LatticeVec gd = vec_add(g, vec_scale(d, fk));
    const LaurentElement th = theta_resampled(gd, target, D, K);
    bool clean = true;
    for (const auto& [t, c] : th.t) {
      const auto wit = s.dominance_witness(t, gd);
      require(wit.has_value(), "property search: theta not pointed");
      if ((*wit)[static_cast<std::size_t>(slot)] != 0) clean = false;
    }
    if (clean) {
      res.found = true;
      res.d = d;
      return res;
    }
  }
  return res;
}

// Cluster-chamber evaluation for any rank: locate a reachable chamber whose
// closure contains m, then read theta off as the localized cluster monomial
// with that degree.
struct ChamberTheta {
  bool found = false;
  std::vector<int> word;
  LatticeVec a;
  LaurentElement value;
};

inline ChamberTheta theta_cluster_chamber(const Seed& s, const LatticeVec& m,
                                          const ExchangeGraph& g) {
  for (const GraphNode& nd : g.nodes) {
    const Chamber ch = chamber_of_seed(nd.state);
    if (!chamber_member(s, ch, m)) continue;
    RatMat gm(static_cast<std::size_t>(s.n),
              RatVec(static_cast<std::size_t>(s.n)));
    for (int i = 0; i < s.n; ++i) {
      const LatticeVec gi = g_vector(nd.state, i);
      for (int p = 0; p < s.n; ++p)
        gm[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] =
            Rat(gi[static_cast<std::size_t>(p)]);
    }
    RatVec rhs(static_cast<std::size_t>(s.n));
    for (int p = 0; p < s.n; ++p)
      rhs[static_cast<std::size_t>(p)] = Rat(m[static_cast<std::size_t>(p)]);
    const auto sol = solve_unique(gm, rhs);
    if (!sol) continue;
    LatticeVec a(static_cast<std::size_t>(s.n));
    bool ok = true;
    for (int i = 0; i < s.n && ok; ++i) {
      if (!rat_is_integer((*sol)[static_cast<std::size_t>(i)])) ok = false;
      else a[static_cast<std::size_t>(i)] =
               rat_to_ll((*sol)[static_cast<std::size_t>(i)]);
    }
    if (!ok) continue;
    for (int i : s.uf)
      if (a[static_cast<std::size_t>(i)] < 0) ok = false;
    if (!ok) continue;
    ChamberTheta res;
    res.found = true;
    res.word = nd.word;
    res.a = a;
    res.value = state_monomial(nd.state, a);
    return res;
  }
  return {};
}

inline ChamberTheta theta_cluster_chamber(const Seed& s, const LatticeVec& m,
                                          int max_depth) {
  return theta_cluster_chamber(s, m, build_graph(s, max_depth));
}

}  // namespace cluskit
