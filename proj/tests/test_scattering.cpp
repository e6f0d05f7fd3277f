#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "cluskit/freezing.hpp"
#include "cluskit/scattering.hpp"
#include "cluskit/seed_json.hpp"

using namespace cluskit;

namespace {

const std::string kData = std::string(CLUSKIT_DATA_DIR) + "/seeds/";

LaurentElement mono(int n, LatticeVec g, VCoeff c = VCoeff::one()) {
  return LaurentElement::monomial(n, std::move(g), std::move(c));
}

std::size_t nontrivial_walls(const ScatteringDiagram& D) {
  std::size_t c = 0;
  for (const Wall& w : D.walls)
    if (!w.trivial(D.K)) ++c;
  return c;
}

const std::vector<LatticeVec> kLoopStarts = {
    {2, 1},  {1, 2},  {3, 1},  {1, 3},  {3, 2},  {2, 3},  {5, 1},
    {1, 5},  {5, 2},  {2, 5},  {5, 3},  {3, 5},  {4, 1},  {1, 4},
    {4, 3},  {3, 4},  {7, 2},  {2, 7},  {7, 3},  {3, 7},  {8, 3}};

}  // namespace

TEST_CASE("crossing a wall dresses monomials by the pairing power") {
  const Seed a2 = load_seed(kData + "a2.json");
  Wall w;
  w.n0 = {1, 0};
  w.coeff[1] = 1;
  w.dir = {0, 1};
  w.line = true;
  w.incoming = true;
  // Pairing zero: untouched.
  CHECK(wall_cross(mono(2, {0, 1}), w, 1, a2, 6) == mono(2, {0, 1}));
  // Pairing one: x^{f_1}(1 + y_1) with p*e_1 = (0,-1).
  CHECK(wall_cross(mono(2, {1, 0}), w, 1, a2, 6) ==
        mono(2, {1, 0}) + mono(2, {1, -1}));
  // Negative pairing expands the geometric series up to order K.
  const LaurentElement inv = wall_cross(mono(2, {-1, 0}), w, 1, a2, 3);
  CHECK(inv == mono(2, {-1, 0}) - mono(2, {-1, -1}) + mono(2, {-1, -2}) -
                   mono(2, {-1, -3}));
  // Crossing forward then back is the identity up to the truncation order:
  // every leftover term lies deeper than order K below one of the bases.
  const LaurentElement z = mono(2, {2, 3}) + mono(2, {-1, 1});
  const LaurentElement diff =
      wall_cross(wall_cross(z, w, 1, a2, 8), w, -1, a2, 8) - z;
  for (const auto& [g, c] : diff.t) {
    bool deep = false;
    for (const LatticeVec& base : {LatticeVec{2, 3}, LatticeVec{-1, 1}}) {
      const auto wit = a2.dominance_witness(g, base);
      if (wit && total_order(*wit) > 8) deep = true;
    }
    CAPTURE(vec_to_string(g));
    CHECK(deep);
  }
  CHECK_FALSE(diff.t.empty());
}

TEST_CASE("incoming walls alone fail the loop check") {
  const Seed a2 = load_seed(kData + "a2.json");
  const ScatteringDiagram D0 = initial_diagram(a2, 4);
  REQUIRE(D0.walls.size() == 2);
  CHECK(D0.walls[0].line);
  CHECK(D0.walls[0].incoming);
  CHECK_FALSE(consistent_loop(D0, {2, 1}, 4));
}

TEST_CASE("pentagon completion adds exactly one outgoing wall") {
  const Seed a2 = load_seed(kData + "a2.json");
  const ScatteringDiagram D = complete_rank2(a2, 6);
  REQUIRE(D.walls.size() == 3);
  const Wall& out = D.walls[2];
  CHECK_FALSE(out.line);
  CHECK_FALSE(out.incoming);
  CHECK(out.n0 == LatticeVec{1, 1});
  CHECK(out.dir == LatticeVec{-1, 1});
  CHECK(out.coeff == std::map<long long, Int>{{1, 1}});
  for (const LatticeVec& s0 : kLoopStarts) {
    CAPTURE(s0);
    CHECK(consistent_loop(D, s0, 6));
  }
}

TEST_CASE("single unfrozen direction needs no completion") {
  const Seed s = load_seed(kData + "one_frozen.json");
  const ScatteringDiagram D = complete_rank2(s, 6);
  REQUIRE(D.walls.size() == 1);
  CHECK(D.walls[0].incoming);
  CHECK(D.walls[0].coeff == std::map<long long, Int>{{1, 1}});
}

TEST_CASE("three unfrozen directions are rejected") {
  const Seed a3 = load_seed(kData + "a3_principal.json");
  CHECK_THROWS_AS(complete_rank2(a3, 4), UnsupportedRank);
}

TEST_CASE("affine rank-2 completion grows and stays consistent") {
  const Seed kron = load_seed(kData + "kronecker.json");
  // New rays appear exactly at the odd orders 2k+1 (the (k,k+1) and
  // (k+1,k) families); even orders only deepen the (1,1) wall.
  const std::map<int, std::size_t> expected = {
      {2, 3}, {3, 5}, {4, 5}, {5, 7}, {6, 7}};
  for (int K = 2; K <= 6; ++K) {
    const ScatteringDiagram D = complete_rank2(kron, K);
    CAPTURE(K);
    CHECK(nontrivial_walls(D) == expected.at(K));
    CHECK(consistent_loop(D, {2, 1}, K));
  }
  const ScatteringDiagram D6 = complete_rank2(kron, 6);
  // The expected ray families: -p*(k,k+1) and -p*(k+1,k) plus the limit.
  std::set<LatticeVec> dirs;
  for (const Wall& w : D6.walls)
    if (!w.line && !w.trivial(6)) dirs.insert(w.dir);
  CHECK(dirs.count({-1, 1}) == 1);
  CHECK(dirs.count({-2, 1}) == 1);
  CHECK(dirs.count({-1, 2}) == 1);
  // The imaginary wall keeps deepening: one order-2k term per even order,
  // with leading coefficient 2 (second-order defect of the two lines).
  for (const Wall& w : D6.walls) {
    if (w.line || w.n0 != LatticeVec{1, 1}) continue;
    CHECK(w.coeff.count(1) == 1);
    CHECK(w.coeff.count(2) == 1);
    CHECK(w.coeff.count(3) == 1);
    CHECK(w.coeff.at(1) == 2);
  }
  // Positivity of every wall coefficient.
  for (const Wall& w : D6.walls)
    for (const auto& [k, c] : w.coeff) CHECK(c > 0);
  for (const LatticeVec& s0 : kLoopStarts) {
    CAPTURE(s0);
    CHECK(consistent_loop(D6, s0, 6));
  }
}

TEST_CASE("pushforward filters walls and preserves consistency") {
  const Seed a2 = load_seed(kData + "a2.json");
  const ScatteringDiagram D = complete_rank2(a2, 6);
  // Empty F: identical wall list.
  const ScatteringDiagram same = freeze_pushforward(D, {});
  REQUIRE(same.walls.size() == D.walls.size());
  for (std::size_t i = 0; i < D.walls.size(); ++i) {
    CHECK(same.walls[i].n0 == D.walls[i].n0);
    CHECK(same.walls[i].coeff == D.walls[i].coeff);
  }
  // F = {2}: only the first incoming line survives.
  const ScatteringDiagram P = freeze_pushforward(D, {1});
  REQUIRE(P.walls.size() == 1);
  CHECK(P.walls[0].line);
  CHECK(P.walls[0].n0 == LatticeVec{1});
  CHECK(consistent_loop(P, {2, 1}, 6));
  CHECK(consistent_loop(P, {1, 3}, 6));
  // Transfer across the diagram matches the frozen seed's own completion.
  const ScatteringDiagram C = complete_rank2(a2.freeze({1}), 6);
  CHECK(diagram_transfer(P, {2, 1}) == diagram_transfer(C, {2, 1}));
  // Two-vertex worked example: freezing the only unfrozen vertex empties
  // the diagram.
  const Seed s = load_seed(kData + "one_frozen.json");
  const ScatteringDiagram E =
      freeze_pushforward(complete_rank2(s, 6), {0});
  CHECK(E.walls.empty());
}

TEST_CASE("pushforward of the affine diagram stays consistent") {
  const Seed kron = load_seed(kData + "kronecker.json");
  const ScatteringDiagram D = complete_rank2(kron, 6);
  for (int f = 0; f < 2; ++f) {
    const ScatteringDiagram P = freeze_pushforward(D, {f});
    CAPTURE(f);
    REQUIRE(nontrivial_walls(P) == 1);
    CHECK(consistent_loop(P, {2, 1}, 6));
    CHECK(diagram_transfer(P, {2, 1}) ==
          diagram_transfer(complete_rank2(kron.freeze({f}), 6), {2, 1}));
  }
}

TEST_CASE("chambers are dual cones of degrees and sign vectors") {
  const Seed a2 = load_seed(kData + "a2.json");
  const SeedState root = initial_state(a2);
  const Chamber cp = chamber_of_seed(root);
  CHECK(cp.normals == std::vector<LatticeVec>{{1, 0}, {0, 1}});
  CHECK(chamber_member(a2, cp, {1, 1}));
  CHECK(chamber_member(a2, cp, {0, 0}));
  CHECK_FALSE(chamber_member(a2, cp, {-1, 0}));

  // The five chambers tile: integer points land in at least one chamber and
  // interior points in exactly one.
  const ExchangeGraph g = build_graph(a2, 3);
  std::vector<Chamber> chambers;
  for (const auto& nd : g.nodes) chambers.push_back(chamber_of_seed(nd.state));
  REQUIRE(chambers.size() == 5);
  for (long long x = -3; x <= 3; ++x)
    for (long long y = -3; y <= 3; ++y) {
      const LatticeVec m = {x, y};
      int hit = 0, interior = 0;
      for (const Chamber& ch : chambers) {
        if (!chamber_member(a2, ch, m)) continue;
        ++hit;
        bool strict = true;
        for (const LatticeVec& c : ch.normals)
          if (pairing_rat(a2, m, c) == 0) strict = false;
        if (strict) ++interior;
      }
      CAPTURE(x, y);
      CHECK(hit >= 1);
      if (interior > 0) CHECK(hit == 1);
    }
}

TEST_CASE("adjacent seeds share a facet with opposite sign vectors") {
  const Seed a2 = load_seed(kData + "a2.json");
  const ExchangeGraph g = build_graph(a2, 3);
  for (const auto& nd : g.nodes) {
    const Chamber ch = chamber_of_seed(nd.state);
    for (const GraphEdge& e : nd.edges) {
      const SeedState next = mutate_state(nd.state, e.k);
      const Chamber ch2 = chamber_of_seed(next);
      const int slot = nd.state.cur.uf_pos[static_cast<std::size_t>(e.k)];
      LatticeVec ck(2), ck2(2);
      for (int p = 0; p < 2; ++p) {
        ck[static_cast<std::size_t>(p)] = nd.state.cmat[static_cast<std::size_t>(p)][static_cast<std::size_t>(slot)];
        ck2[static_cast<std::size_t>(p)] = next.cmat[static_cast<std::size_t>(p)][static_cast<std::size_t>(slot)];
      }
      CHECK(ck2 == vec_neg(ck));
      // Every unchanged degree lies in both chambers.
      for (int i = 0; i < 2; ++i) {
        if (i == e.k) continue;
        const LatticeVec gi = g_vector(nd.state, i);
        CHECK(chamber_member(a2, ch, gi));
        CHECK(chamber_member(a2, ch2, gi));
      }
    }
  }
}

TEST_CASE("freezing merges chambers upward") {
  const Seed a2 = load_seed(kData + "a2.json");
  const ExchangeGraph g = build_graph(a2, 3);
  const Seed f2 = a2.freeze({1});
  const ExchangeGraph fg = build_graph(f2, 3);
  std::vector<Chamber> frozen;
  for (const auto& nd : fg.nodes) frozen.push_back(chamber_of_seed(nd.state));
  REQUIRE(frozen.size() == 2);
  // Every reachable chamber sits inside some reachable frozen chamber.
  for (const auto& nd : g.nodes) {
    const Chamber ch = chamber_of_seed(nd.state);
    bool contained = false;
    for (const Chamber& big : frozen)
      if (chamber_contains(f2, big, ch)) contained = true;
    CAPTURE(word_to_string(nd.word));
    CHECK(contained);
  }
  // R-reachable seeds land in the frozen chamber of their own word.
  const SeedState r1 = mutate_state(initial_state(f2), 0);
  CHECK(chamber_contains(
      f2, chamber_of_seed(r1),
      chamber_of_seed(mutate_state(initial_state(a2), 0))));
}

TEST_CASE("three-vertex chambers merge into the doubly-frozen fan") {
  const Seed a3 = load_seed(kData + "a3_principal.json");
  const ExchangeGraph g = build_graph(a3, 8);
  const Seed fa3 = a3.freeze({1});
  const ExchangeGraph fg = build_graph(fa3, 6);
  std::vector<Chamber> frozen;
  for (const auto& nd : fg.nodes) frozen.push_back(chamber_of_seed(nd.state));
  REQUIRE(frozen.size() == 4);
  for (const auto& nd : g.nodes) {
    const Chamber ch = chamber_of_seed(nd.state);
    int hits = 0;
    for (const Chamber& big : frozen)
      if (chamber_contains(fa3, big, ch)) ++hits;
    CAPTURE(word_to_string(nd.word));
    CHECK(hits >= 1);
  }
}
