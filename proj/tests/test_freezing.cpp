#include <catch2/catch_amalgamated.hpp>

#include "cluskit/freezing.hpp"
#include "cluskit/seed_json.hpp"
#include "cluskit/tropical.hpp"

using namespace cluskit;

namespace {

const std::string kData = std::string(CLUSKIT_DATA_DIR) + "/seeds/";

LaurentElement mono(int n, LatticeVec g, VCoeff c = VCoeff::one()) {
  return LaurentElement::monomial(n, std::move(g), std::move(c));
}

}  // namespace

TEST_CASE("freezing a one-step variable keeps only the bare monomial") {
  // Worked two-vertex example: uf = {1}, x2 = x^{p*e1}, so
  // x1' = x1^{-1} + x1^{-1} x2 loses its dressed term under F = {1}.
  const Seed s = load_seed(kData + "one_frozen.json");
  const SeedState st1 = mutate_state(initial_state(s), 0);
  const LaurentElement x1p = st1.vars[0];
  REQUIRE(x1p == mono(2, {-1, 0}) + mono(2, {-1, 1}));
  CHECK(freeze_pointed(x1p, s, {0}) == mono(2, {-1, 0}));
  // F empty is the identity.
  CHECK(freeze_pointed(x1p, s, {}) == x1p);
  // At base degree 0, 1 + x2 collapses to 1.
  const LaurentElement z = mono(2, {0, 0}) + mono(2, {0, 1});
  CHECK(freeze_at(z, {0, 0}, s, {0}) == mono(2, {0, 0}));
  // A term outside m + p*N^{uf} has no witness.
  CHECK_THROWS_AS(freeze_at(mono(2, {1, 0}), {0, 0}, s, {0}), DomainError);
}

TEST_CASE("coefficient-table freezing is a term filter") {
  const Seed a2 = load_seed(kData + "a2.json");
  PointedElement p;
  p.g = {0, 0};
  p.f.emplace(LatticeVec{0, 0}, VCoeff::one());
  p.f.emplace(LatticeVec{0, 1}, VCoeff::one());
  p.f.emplace(LatticeVec{1, 1}, VCoeff::one());
  const PointedElement q = freeze_fpoly(p, a2, {0});
  REQUIRE(q.f.size() == 2);
  CHECK(q.f.count(LatticeVec{0, 0}) == 1);
  CHECK(q.f.count(LatticeVec{0, 1}) == 1);
  // Realized on the deepest A2 variable: F-table 1 + y1 + y1y2.
  const SeedState deep = mutate_word(initial_state(a2), {1, 0});
  const PointedElement fc = f_polynomial(deep, 0);
  REQUIRE(fc.f == std::map<LatticeVec, VCoeff>{{{0, 0}, VCoeff::one()},
                                               {{1, 0}, VCoeff::one()},
                                               {{1, 1}, VCoeff::one()}});
  const PointedElement fcz = freeze_fpoly(fc, a2, {1});
  CHECK(fcz.f == std::map<LatticeVec, VCoeff>{{{0, 0}, VCoeff::one()},
                                              {{1, 0}, VCoeff::one()}});
  // Reindexing to the frozen seed drops the dead slot.
  const PointedElement small = restrict_to_frozen(fcz, a2, a2.freeze({1}));
  CHECK(small.f == std::map<LatticeVec, VCoeff>{{{0}, VCoeff::one()},
                                                {{1}, VCoeff::one()}});
  CHECK_THROWS_AS(restrict_to_frozen(fc, a2, a2.freeze({1})), Error);
}

TEST_CASE("base-degree shift: frozen-witness shifts kill, clean shifts agree") {
  const Seed a2 = load_seed(kData + "a2.json");
  const SeedState st1 = mutate_state(initial_state(a2), 0);
  const LaurentElement x1p = st1.vars[0];  // pointed at (-1,1)
  REQUIRE(degree_of(x1p, a2) == LatticeVec{-1, 1});
  // m = (-1,1) - p*e2 dominates the degree through n0 = e2.
  const LatticeVec m = vec_sub(LatticeVec{-1, 1}, a2.p_star({0, 1}));
  CHECK(freeze_at(x1p, m, a2, {1}) == LaurentElement(2));
  CHECK(freeze_at(x1p, m, a2, {0}) == freeze_pointed(x1p, a2, {0}));
  CHECK(freeze_pointed(x1p, a2, {0}) == mono(2, {-1, 1}));
}

TEST_CASE("freezing respects the twisted product") {
  for (const std::string name :
       {std::string("one_frozen.json"), std::string("one_frozen_quantum.json"),
        std::string("a2_quantum.json")}) {
    CAPTURE(name);
    const Seed s = load_seed(kData + name);
    const SeedState st1 = mutate_state(initial_state(s), 0);
    const LaurentElement x1 = mono(s.n, unit_vec(s.n, 0));
    const LaurentElement x1p = st1.vars[0];
    CHECK(check_multiplicativity(x1, x1p, s, {0}));
    CHECK(check_multiplicativity(x1p, x1p, s, {0}));
    // z2 = 1 is trivial.
    CHECK(check_multiplicativity(x1p, LaurentElement::unit(s.n), s, {0}));
  }
  // Exhaustive small search over A2 variable pairs and both freeze choices.
  const Seed a2 = load_seed(kData + "a2.json");
  std::vector<LaurentElement> vars;
  for (const auto& node : build_graph(a2, 2).nodes)
    for (int v : node.state.cur.uf) vars.push_back(node.state.vars[v]);
  for (const auto& z1 : vars)
    for (const auto& z2 : vars)
      for (int f = 0; f < 2; ++f) CHECK(check_multiplicativity(z1, z2, a2, {f}));
}

TEST_CASE("freezing commutes with transport along words avoiding F") {
  const Seed a3 = load_seed(kData + "a3_principal.json");
  const std::vector<int> word = {0, 2};
  for (int i = 0; i < a3.n; ++i) {
    const LaurentElement xi = mono(a3.n, unit_vec(a3.n, i));
    CHECK(freeze_commutes_with_mutation(xi, a3, word, {1}));
    CHECK(freeze_commutes_with_mutation(xi, a3, {}, {1}));
  }
  // A non-initial variable: x1' is pointed everywhere by the Laurent property.
  const LaurentElement x1p = mutate_state(initial_state(a3), 0).vars[0];
  CHECK(freeze_commutes_with_mutation(x1p, a3, word, {1}));
  CHECK(freeze_commutes_with_mutation(x1p, a3, {2, 0, 2}, {1}));
  CHECK_THROWS_AS(freeze_commutes_with_mutation(x1p, a3, {0, 1}, {1}), BadWord);
  // Quantum variant.
  const Seed a3q = load_seed(kData + "a3_principal_quantum.json");
  const LaurentElement x1pq = mutate_state(initial_state(a3q), 0).vars[0];
  CHECK(freeze_commutes_with_mutation(x1pq, a3q, word, {1}));
}

TEST_CASE("frozen images of variables are again localized cluster monomials") {
  const Seed s = load_seed(kData + "one_frozen.json");
  const LaurentElement x1p = mutate_state(initial_state(s), 0).vars[0];
  const FrozenMonomialId id = identify_frozen_cluster_monomial(x1p, s, {0}, 2);
  REQUIRE(id.found);
  CHECK(id.word.empty());
  CHECK(id.a == LatticeVec{-1, 0});
  // A frozen generator maps to itself.
  const FrozenMonomialId id2 =
      identify_frozen_cluster_monomial(mono(2, {0, 1}), s, {0}, 2);
  REQUIRE(id2.found);
  CHECK(id2.word.empty());
  CHECK(id2.a == LatticeVec{0, 1});
}

TEST_CASE("every frozen A3 variable is identified within the reduced walk") {
  const Seed a3 = load_seed(kData + "a3_principal.json");
  std::set<std::string> seen;
  std::vector<LaurentElement> vars;
  for (const auto& node : build_graph(a3, 8).nodes)
    for (int v : node.state.cur.uf)
      if (seen.insert(node.state.vars[v].to_string()).second)
        vars.push_back(node.state.vars[v]);
  REQUIRE(vars.size() == 9);
  for (const auto& z : vars) {
    CAPTURE(z.to_string());
    CHECK(identify_frozen_cluster_monomial(z, a3, {1}, 6).found);
  }
}

TEST_CASE("words avoiding F reach every seed that keeps x_F") {
  const Seed a3 = load_seed(kData + "a3_principal.json");
  const SeedState root = initial_state(a3);
  const auto w0 = reachability_reduction(root, a3, {1}, 4);
  REQUIRE(w0.has_value());
  CHECK(w0->empty());
  const auto w1 = reachability_reduction(mutate_state(root, 0), a3, {1}, 4);
  REQUIRE(w1.has_value());
  CHECK(*w1 == std::vector<int>{0});
  const auto w2 =
      reachability_reduction(mutate_word(root, {0, 2}), a3, {1}, 4);
  REQUIRE(w2.has_value());
  CHECK(w2->size() == 2);
  // Mutating at 2 leaves the x_2-keeping family, so no word exists.
  CHECK_FALSE(reachability_reduction(mutate_state(root, 1), a3, {1}, 5)
                  .has_value());
}

TEST_CASE("frozen images stay Laurent and compatibly pointed on the reduced walk") {
  const Seed a2 = load_seed(kData + "a2.json");
  const Seed f2 = a2.freeze({1});
  std::vector<LaurentElement> vars;
  for (const auto& node : build_graph(a2, 2).nodes)
    for (int v : node.state.cur.uf) vars.push_back(node.state.vars[v]);
  for (const auto& z : vars) {
    const LaurentElement zf = retag(freeze_pointed(z, a2, {1}), f2.id);
    const LatticeVec m = degree_of(zf, f2);
    for (const std::vector<int>& word : {std::vector<int>{}, {0}, {0, 0}}) {
      CAPTURE(z.to_string(), word);
      REQUIRE(is_laurent_in(zf, f2, word));
      const LaurentElement zt = transport_word(zf, f2, word);
      Seed t = f2;
      for (int k : word) t = t.mutate(k);
      CHECK(is_pointed(zt, t));
      CHECK(degree_of(zt, t) == tropical_word(f2, word, m));
    }
  }
}
