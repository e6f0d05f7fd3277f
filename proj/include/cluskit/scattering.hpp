#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cluskit/state.hpp"

namespace cluskit {

inline LatticeVec primitive_vec(LatticeVec u) {
  long long g = 0;
  for (long long x : u) g = gcd_ll(g, x);
  require(g != 0, "primitive_vec: zero vector");
  for (auto& x : u) x /= g;
  return u;
}

inline long long total_order(const LatticeVec& n) {
  long long s = 0;
  for (long long x : n) s += x;
  return s;
}

// d-weighted pairing <m, n> = sum_k m[uf_k] n_k / d_{uf_k}, m ambient,
// n in unfrozen-slot coordinates.
inline Rat pairing_rat(const Seed& s, const LatticeVec& m,
                       const LatticeVec& nvec) {
  require(m.size() == static_cast<std::size_t>(s.n) &&
              nvec.size() == s.uf.size(),
          "pairing: wrong index sets");
  Rat acc = 0;
  for (std::size_t k = 0; k < nvec.size(); ++k) {
    const int v = s.uf[k];
    acc += Rat(m[static_cast<std::size_t>(v)] * nvec[k],
               s.d[static_cast<std::size_t>(v)]);
  }
  return acc;
}

// Minimal positive multiple of n0 pairing integrally with every f_i.
inline LatticeVec ntilde(const Seed& s, const LatticeVec& n0) {
  long long t = 1;
  for (std::size_t k = 0; k < n0.size(); ++k) {
    if (n0[k] == 0) continue;
    const long long dk = s.d[static_cast<std::size_t>(s.uf[k])];
    const long long step = dk / gcd_ll(dk, n0[k]);
    t = t / gcd_ll(t, step) * step;
  }
  return vec_scale(t, n0);
}

inline long long pairing_int(const Seed& s, const LatticeVec& m,
                             const LatticeVec& nvec) {
  const Rat p = pairing_rat(s, m, nvec);
  require(rat_is_integer(p), "pairing_int: non-integral crossing exponent");
  return rat_to_ll(p);
}

// Polynomial in the coefficient variables y, truncated at total degree K.
struct YSeries {
  int r = 0;
  std::map<LatticeVec, Int> c;

  static YSeries one(int r) {
    YSeries s;
    s.r = r;
    s.c.emplace(LatticeVec(static_cast<std::size_t>(r), 0), 1);
    return s;
  }
  bool is_one() const {
    return c.size() == 1 && vec_is_zero(c.begin()->first) &&
           c.begin()->second == 1;
  }
  bool operator==(const YSeries& o) const { return r == o.r && c == o.c; }
  void add(const LatticeVec& n, const Int& a, int K) {
    if (total_order(n) > K) return;
    auto [it, fresh] = c.emplace(n, a);
    if (!fresh) {
      it->second += a;
      if (it->second == 0) c.erase(it);
    }
  }
  std::string to_string() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, a] : c) {
      if (!first) os << " + ";
      first = false;
      if (a != 1 || vec_is_zero(n)) os << a;
      if (!vec_is_zero(n)) {
        if (a != 1) os << "*";
        os << "y^" << vec_to_string(n);
      }
    }
    return os.str();
  }
};

inline YSeries ys_mul(const YSeries& a, const YSeries& b, int K) {
  YSeries r;
  r.r = a.r;
  for (const auto& [na, ca] : a.c)
    for (const auto& [nb, cb] : b.c) r.add(vec_add(na, nb), ca * cb, K);
  return r;
}

inline YSeries ys_pow(const YSeries& f, long long e, int K) {
  YSeries base = f;
  if (e < 0) {
    // Invert 1 + g as a geometric series; needs constant term 1.
    const LatticeVec zero(static_cast<std::size_t>(f.r), 0);
    auto it = f.c.find(zero);
    require(it != f.c.end() && it->second == 1,
            "ys_pow: inverse needs constant term 1");
    YSeries g = f;
    g.c.erase(zero);
    YSeries inv = YSeries::one(f.r);
    YSeries pw = YSeries::one(f.r);
    while (true) {
      YSeries next = ys_mul(pw, g, K);
      for (auto& [n, a] : next.c) a = -a;
      if (next.c.empty()) break;
      for (const auto& [n, a] : next.c) inv.add(n, a, K);
      pw = next;
    }
    base = inv;
    e = -e;
  }
  YSeries r = YSeries::one(f.r);
  for (long long i = 0; i < e; ++i) r = ys_mul(r, base, K);
  return r;
}

// A wall: primitive normal n0 (slot coordinates), function
// 1 + sum_k coeff[k] y^{k n0}, and its support in the slice plane spanned by
// the builder seed's unfrozen coordinates: a ray through dir, or the full
// line for the initial walls.  Frozen directions are implicit in every wall.
struct Wall {
  LatticeVec n0;
  std::map<long long, Int> coeff;
  LatticeVec dir;
  bool line = false;
  bool incoming = false;

  YSeries fn(int K) const {
    YSeries f = YSeries::one(static_cast<int>(n0.size()));
    const long long step = total_order(n0);
    for (const auto& [k, a] : coeff) {
      if (a == 0 || k * step > K) continue;
      f.add(vec_scale(k, n0), a, K);
    }
    return f;
  }
  bool trivial(int K) const {
    const long long step = total_order(n0);
    for (const auto& [k, a] : coeff)
      if (a != 0 && k * step <= K) return false;
    return true;
  }
};

// Order-truncated scattering diagram.  slice lists the ambient vertices whose
// coordinates parametrize wall supports; it is the unfrozen set of the seed
// the diagram was built from and survives freezing pushforwards unchanged.
struct ScatteringDiagram {
  Seed seed;
  std::vector<int> slice;
  int K = 0;
  std::vector<Wall> walls;
};

inline LatticeVec slice_coords(const ScatteringDiagram& D,
                               const LatticeVec& ambient) {
  LatticeVec r;
  r.reserve(D.slice.size());
  for (int v : D.slice) r.push_back(ambient[static_cast<std::size_t>(v)]);
  return r;
}

inline LatticeVec embed_slots(const Seed& s, const LatticeVec& nvec) {
  LatticeVec r(static_cast<std::size_t>(s.n), 0);
  for (std::size_t k = 0; k < nvec.size(); ++k)
    r[static_cast<std::size_t>(s.uf[k])] = nvec[k];
  return r;
}

// Incoming walls (e_k^perp, 1 + y_k), one full line per unfrozen vertex.
inline ScatteringDiagram initial_diagram(const Seed& s, int K) {
  require(s.lambda.is_zero(), "scattering: classical seeds only");
  if (s.rank_uf() > 2)
    throw UnsupportedRank("scattering: more than two unfrozen directions");
  ScatteringDiagram D;
  D.seed = s;
  D.slice = s.uf;
  D.K = K;
  const int r = s.rank_uf();
  for (int k = 0; k < r; ++k) {
    Wall w;
    w.n0 = unit_vec(r, k);
    w.coeff[1] = 1;
    w.incoming = true;
    if (r == 2) {
      // The line m_k = 0 in the slice plane.
      w.dir = unit_vec(2, 1 - k);
      w.line = true;
    } else {
      w.dir = LatticeVec{0};
      w.line = false;
    }
    D.walls.push_back(std::move(w));
  }
  return D;
}

// Monomial crossing: x^m -> x^m f^{eps <m, ntilde0>}, expanded over the
// ambient torus and truncated at total coefficient degree K.
inline LaurentElement wall_cross(const LaurentElement& z, const Wall& w,
                                 int eps, const Seed& s, int K) {
  const LatticeVec nt = ntilde(s, w.n0);
  const YSeries f = w.fn(K);
  LaurentElement out(z.n, z.seed_id);
  for (const auto& [m, cm] : z.t) {
    const long long e = eps * pairing_int(s, m, nt);
    const YSeries fe = ys_pow(f, e, K);
    for (const auto& [n, a] : fe.c)
      out.add_term(vec_add(m, s.p_star(n)), cm * VCoeff(a));
  }
  return out;
}

struct LoopEvent {
  int wall;        // index into walls
  LatticeVec pos;  // crossing ray in the slice plane
  int eps;
};

inline long long cross2(const LatticeVec& a, const LatticeVec& b) {
  return a[0] * b[1] - a[1] * b[0];
}

inline long long dot2(const LatticeVec& a, const LatticeVec& b) {
  return a[0] * b[0] + a[1] * b[1];
}

// Crossing sign of a counterclockwise passage at ray pos against normal n0:
// sign of <-tangent, n0> with tangent = rot90(pos).
inline int loop_eps(const Seed& s, const LatticeVec& pos,
                    const LatticeVec& n0, const std::vector<int>& slice) {
  LatticeVec tangent(static_cast<std::size_t>(s.n), 0);
  tangent[static_cast<std::size_t>(slice[0])] = -pos[1];
  tangent[static_cast<std::size_t>(slice[1])] = pos[0];
  const Rat p = -pairing_rat(s, tangent, n0);
  require(p != 0, "loop_eps: tangent crossing degenerate");
  return p > 0 ? 1 : -1;
}

// Events of the full counterclockwise circle starting just after direction
// s0; a wall ray parallel to s0 makes the start non-generic.
inline std::vector<LoopEvent> loop_events(const ScatteringDiagram& D,
                                          const LatticeVec& s0) {
  require(D.slice.size() == 2, "loop_events: two-dimensional slices only");
  std::vector<LoopEvent> ev;
  auto push = [&](int wi, const LatticeVec& pos) {
    if (cross2(s0, pos) == 0) {
      if (dot2(s0, pos) > 0)
        throw GenericityError("loop start lies on a wall");
      // Antipode of the start: crossed in the middle of the loop; fine.
    }
    ev.push_back(LoopEvent{
        wi, pos, loop_eps(D.seed, pos, D.walls[static_cast<std::size_t>(wi)].n0,
                          D.slice)});
  };
  for (std::size_t i = 0; i < D.walls.size(); ++i) {
    const Wall& w = D.walls[i];
    if (w.trivial(D.K)) continue;
    push(static_cast<int>(i), w.dir);
    if (w.line) push(static_cast<int>(i), vec_neg(w.dir));
  }
  // Angular position measured counterclockwise from s0, in (0, 2pi].
  auto sector = [&](const LatticeVec& u) {
    const long long cr = cross2(s0, u);
    if (cr > 0) return 0;  // (0, pi)
    if (cr == 0) return 1; // exactly pi (antipode) or 2pi (excluded above)
    return 2;              // (pi, 2pi)
  };
  std::stable_sort(ev.begin(), ev.end(),
                   [&](const LoopEvent& a, const LoopEvent& b) {
                     const int sa = sector(a.pos), sb = sector(b.pos);
                     if (sa != sb) return sa < sb;
                     return cross2(a.pos, b.pos) > 0;
                   });
  for (std::size_t i = 0; i + 1 < ev.size(); ++i)
    if (sector(ev[i].pos) == sector(ev[i + 1].pos) &&
        cross2(ev[i].pos, ev[i + 1].pos) == 0 &&
        !(ev[i].pos == ev[i + 1].pos &&
          D.walls[static_cast<std::size_t>(ev[i].wall)].n0 ==
              D.walls[static_cast<std::size_t>(ev[i + 1].wall)].n0))
      throw GenericityError("distinct walls share a crossing ray");
  return ev;
}

// Dressing series of x^m after the given crossings, truncated at trunc.
inline YSeries cross_events(const ScatteringDiagram& D, const LatticeVec& m,
                            const std::vector<LoopEvent>& ev, int trunc) {
  const Seed& s = D.seed;
  const int r = s.rank_uf();
  YSeries S = YSeries::one(r);
  for (const LoopEvent& e : ev) {
    const Wall& w = D.walls[static_cast<std::size_t>(e.wall)];
    const YSeries f = w.fn(trunc);
    if (f.is_one()) continue;
    const LatticeVec nt = ntilde(s, w.n0);
    // Per-slot weights <p* f_slot, ntilde>: the y-monomial y^n picks up
    // f^{eps <p*n, ntilde>}.
    std::vector<long long> wt(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j)
      wt[static_cast<std::size_t>(j)] =
          pairing_int(s, s.p_star(unit_vec(r, j)), nt);
    const long long base = pairing_int(s, m, nt);
    std::map<long long, YSeries> powers;
    YSeries next;
    next.r = r;
    for (const auto& [n, a] : S.c) {
      long long expo = base;
      for (int j = 0; j < r; ++j) expo += n[static_cast<std::size_t>(j)] *
                                          wt[static_cast<std::size_t>(j)];
      expo *= e.eps;
      auto it = powers.find(expo);
      if (it == powers.end())
        it = powers.emplace(expo, ys_pow(f, expo, trunc)).first;
      for (const auto& [nf, af] : it->second.c)
        next.add(vec_add(n, nf), a * af, trunc);
    }
    S = next;
  }
  return S;
}

// Full-circle action on every unfrozen generator; identity iff consistent.
inline bool consistent_loop(const ScatteringDiagram& D, const LatticeVec& s0,
                            int trunc) {
  const std::vector<LoopEvent> ev = loop_events(D, s0);
  for (int k = 0; k < D.seed.rank_uf(); ++k) {
    const LatticeVec m =
        unit_vec(D.seed.n, D.seed.uf[static_cast<std::size_t>(k)]);
    if (!cross_events(D, m, ev, trunc).is_one()) return false;
  }
  return true;
}

// Path-ordered product along the half loop from s0 to -s0 (deep positive to
// deep negative side), acting on the unfrozen generators.  This is the
// diagram's transfer invariant: equivalent diagrams give equal actions.
inline std::vector<YSeries> diagram_transfer(const ScatteringDiagram& D,
                                             const LatticeVec& s0) {
  std::vector<LoopEvent> ev;
  if (D.slice.size() == 2) {
    for (const LoopEvent& e : loop_events(D, s0))
      if (cross2(s0, e.pos) > 0) ev.push_back(e);
  } else {
    // One-dimensional slice: every wall sits at the origin; all normals are
    // parallel, so the crossing order is immaterial.
    for (std::size_t i = 0; i < D.walls.size(); ++i)
      if (!D.walls[i].trivial(D.K))
        ev.push_back(LoopEvent{static_cast<int>(i), {}, 1});
  }
  std::vector<YSeries> out;
  for (int k = 0; k < D.seed.rank_uf(); ++k) {
    const LatticeVec m =
        unit_vec(D.seed.n, D.seed.uf[static_cast<std::size_t>(k)]);
    out.push_back(cross_events(D, m, ev, D.K));
  }
  return out;
}

// Order-by-order completion for at most two unfrozen directions: at each
// total degree, read the loop defect off the generators and cancel it with
// the unique outgoing wall coefficient; the two generator equations must
// agree, which the run asserts.
inline ScatteringDiagram complete_rank2(const Seed& s, int K) {
  ScatteringDiagram D = initial_diagram(s, K);
  if (s.rank_uf() < 2) return D;
  const int r = 2;
  const std::vector<LatticeVec> starts = {{2, 1}, {1, 2}, {3, 1}, {1, 3},
                                          {5, 2}, {2, 5}, {7, 3}, {3, 7}};
  // Correction rays only; the initial lines never change their functions.
  std::map<LatticeVec, std::size_t> ray_index;
  for (int o = 2; o <= K; ++o) {
    for (std::size_t attempt = 0;; ++attempt) {
      require(attempt < starts.size(), "complete_rank2: no generic start");
      const LatticeVec& s0 = starts[attempt];
      try {
      const std::vector<LoopEvent> ev = loop_events(D, s0);
      // Defects of this order, read off both generators.
      std::map<LatticeVec, std::vector<std::pair<int, Int>>> defect;
      for (int k = 0; k < r; ++k) {
        const LatticeVec m = unit_vec(s.n, s.uf[static_cast<std::size_t>(k)]);
        const YSeries S = cross_events(D, m, ev, o);
        for (const auto& [n, a] : S.c)
          if (total_order(n) == o && a != 0) defect[n].push_back({k, a});
      }
      for (const auto& [n, rows] : defect) {
        const LatticeVec n0p = primitive_vec(n);
        require(vec_nonneg(n0p), "completion: defect with mixed signs");
        const long long kappa = n[0] != 0 ? n[0] / n0p[0] : n[1] / n0p[1];
        const LatticeVec nt = ntilde(s, n0p);
        LatticeVec out_dir = slice_coords(D, s.p_star(nt));
        require(!vec_is_zero(out_dir),
                "completion: defect normal has no outgoing ray");
        out_dir = primitive_vec(vec_neg(out_dir));
        auto it = ray_index.find(out_dir);
        if (it == ray_index.end()) {
          Wall w;
          w.n0 = n0p;
          w.dir = out_dir;
          D.walls.push_back(std::move(w));
          it = ray_index.emplace(out_dir, D.walls.size() - 1).first;
        }
        Wall& w = D.walls[it->second];
        require(w.n0 == n0p, "completion: ray carries a foreign normal");
        const int eps = loop_eps(s, out_dir, n0p, D.slice);
        // First-order effect of c y^{kappa n0p} on generator k's loop series
        // is eps <f_k, nt> c at y^n; one c must cancel every row.
        std::optional<Int> c;
        for (const auto& [k, a] : rows) {
          const long long ek = pairing_int(
              s, unit_vec(s.n, s.uf[static_cast<std::size_t>(k)]), nt);
          if (ek == 0) {
            require(a == 0, "completion: unfixable defect");
            continue;
          }
          const Int num = -a;
          const Int den = Int(eps) * ek;
          require(num % den == 0, "completion: non-integral wall coefficient");
          const Int ck = num / den;
          require(!c || *c == ck, "completion: generators disagree");
          c = ck;
        }
        require(c.has_value(), "completion: defect pairs to zero everywhere");
        w.coeff[kappa] += *c;
        if (w.coeff[kappa] == 0) w.coeff.erase(kappa);
      }
      if (defect.empty()) break;
      // Re-verify this order from scratch before moving on.
      for (int k = 0; k < r; ++k) {
        const LatticeVec m = unit_vec(s.n, s.uf[static_cast<std::size_t>(k)]);
        const YSeries S = cross_events(D, m, loop_events(D, s0), o);
        for (const auto& [n, a] : S.c)
          require(total_order(n) != o || a == 0,
                  "complete_rank2: defect did not cancel");
      }
      break;
      } catch (const GenericityError&) {
        continue;  // a wall ray hit this start; try the next one
      }
    }
  }
  // No added wall may contain p* of its own normal.
  for (const Wall& w : D.walls) {
    if (w.line || w.incoming || w.trivial(K)) continue;
    const LatticeVec in_dir = slice_coords(D, D.seed.p_star(ntilde(s, w.n0)));
    require(vec_is_zero(in_dir) || primitive_vec(in_dir) != w.dir,
            "completion produced an incoming correction");
  }
  return D;
}

// Freezing pushforward: wall functions are term-filtered, so a wall survives
// exactly when its normal avoids F; supports are unchanged, normals are
// reindexed to the frozen seed's unfrozen slots.
inline ScatteringDiagram freeze_pushforward(const ScatteringDiagram& D,
                                            const std::vector<int>& F) {
  ScatteringDiagram out;
  out.seed = D.seed.freeze(F);
  out.slice = D.slice;
  out.K = D.K;
  for (const Wall& w : D.walls) {
    bool meets = false;
    for (std::size_t k = 0; k < w.n0.size(); ++k)
      if (w.n0[k] != 0 &&
          std::find(F.begin(), F.end(), D.seed.uf[k]) != F.end())
        meets = true;
    if (meets) continue;
    Wall nw = w;
    LatticeVec small;
    for (std::size_t k = 0; k < w.n0.size(); ++k)
      if (out.seed.is_unfrozen(D.seed.uf[k])) small.push_back(w.n0[k]);
    nw.n0 = std::move(small);
    out.walls.push_back(std::move(nw));
  }
  return out;
}

// Chamber of a seed: generated by the degrees of its variables together with
// the frozen lineality, cut out by the c-vector halfspaces.  The two
// descriptions agree because degrees and c-vectors pair biorthogonally,
// which is asserted here.
struct Chamber {
  std::vector<LatticeVec> gens;     // g-vectors of all vertices, ambient
  std::vector<LatticeVec> normals;  // c-vectors, slot coordinates
};

inline Chamber chamber_of_seed(const SeedState& st) {
  const Seed& t0 = st.initial();
  const int r = t0.rank_uf();
  Chamber ch;
  for (int i = 0; i < t0.n; ++i) ch.gens.push_back(g_vector(st, i));
  for (int j = 0; j < r; ++j) {
    LatticeVec c(static_cast<std::size_t>(r));
    for (int p = 0; p < r; ++p)
      c[static_cast<std::size_t>(p)] =
          st.cmat[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)];
    ch.normals.push_back(std::move(c));
  }
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < t0.n; ++i) {
      const Rat p = pairing_rat(t0, ch.gens[static_cast<std::size_t>(i)],
                                ch.normals[static_cast<std::size_t>(j)]);
      if (i == t0.uf[static_cast<std::size_t>(j)])
        require(p > 0, "chamber: degree/c-vector duality broken (diagonal)");
      else
        require(p == 0, "chamber: degree/c-vector duality broken");
    }
  return ch;
}

inline bool chamber_member(const Seed& t0, const Chamber& ch,
                           const LatticeVec& m) {
  for (const LatticeVec& c : ch.normals)
    if (pairing_rat(t0, m, c) < 0) return false;
  return true;
}

inline bool chamber_contains(const Seed& big_seed, const Chamber& big,
                             const Chamber& small) {
  for (const LatticeVec& g : small.gens)
    if (!chamber_member(big_seed, big, g)) return false;
  return true;
}

}  // namespace cluskit
