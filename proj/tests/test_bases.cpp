#include <catch2/catch_amalgamated.hpp>

#include "cluskit/bases.hpp"
#include "cluskit/seed_json.hpp"

using namespace cluskit;

namespace {

const std::string kData = std::string(CLUSKIT_DATA_DIR) + "/seeds/";

LaurentElement mono(int n, LatticeVec g, VCoeff c = VCoeff::one()) {
  return LaurentElement::monomial(n, std::move(g), std::move(c));
}

}  // namespace

TEST_CASE("localized cluster monomials realize the two-vertex family") {
  const Seed s = load_seed(kData + "one_frozen.json");
  const PointedSet S = make_cluster_monomial_set(s, 4);

  // m1 >= 0: plain monomials x1^m1 x2^m2, any sign on the frozen exponent.
  CHECK(*S.at({3, 2}) == mono(2, {3, 2}));
  CHECK(*S.at({0, -1}) == mono(2, {0, -1}));
  CHECK(*S.at({0, 0}) == mono(2, {0, 0}));
  // m1 < 0: powers of the once-mutated variable times x2^m2.
  CHECK(*S.at({-1, 0}) == mono(2, {-1, 0}) + mono(2, {-1, 1}));
  CHECK(*S.at({-2, 1}) == mono(2, {-2, 1}) + mono(2, {-2, 2}, VCoeff(Int(2))) +
                              mono(2, {-2, 3}));
  // Every degree in a box is realized: the two chambers tile the plane.
  for (const auto& g : degree_box(2, 2)) CHECK(S.at(g).has_value());
}

TEST_CASE("the two-vertex product decomposes with local support") {
  const Seed s = load_seed(kData + "one_frozen.json");
  const PointedSet S = make_cluster_monomial_set(s, 4);

  // x1 * x1' = 1 + x2, spread over two family members.
  const LaurentElement z = twisted_mul(*S.at({1, 0}), *S.at({-1, 0}), s.lambda);
  CHECK(z == mono(2, {0, 0}) + mono(2, {0, 1}));
  const TransitionRow row = decompose(z, S);
  const TransitionRow want{{{0, 0}, VCoeff::one()}, {{0, 1}, VCoeff::one()}};
  CHECK(row == want);
  CHECK(is_unitriangular_row(row, {0, 0}, s));

  const std::vector<std::pair<LatticeVec, LatticeVec>> pairs{
      {{1, 0}, {-1, 0}}, {{-1, 0}, {-1, 1}}, {{2, -1}, {-3, 2}}};
  const CheckReport deep = check_local_support(S, pairs, false);
  CHECK(deep.ok);
  CHECK(deep.checked == 3);
  CHECK(deep.fast_path == 0);
  // Everything here is positive, so the fast path may take all of them.
  const CheckReport fast = check_local_support(S, pairs, true);
  CHECK(fast.ok);
  CHECK(fast.fast_path == 3);
}

TEST_CASE("basis freezing collapses the two-vertex family to monomials") {
  const Seed s = load_seed(kData + "one_frozen.json");
  const PointedSet S = make_cluster_monomial_set(s, 4);
  const PointedSet Z = basis_by_freezing(S, {0});
  const PointedSet L = basis_by_localization(S, {0}, 6);

  for (const auto& g : degree_box(2, 2)) {
    REQUIRE(Z.at(g).has_value());
    CHECK(*Z.at(g) == mono(2, g));
    // Localizing the shift away gives the same family.
    REQUIRE(L.at(g).has_value());
    CHECK(*L.at(g) == mono(2, g));
  }
  // The shift search stops at the first clean degree: one step from (-1,0).
  const LocalizedElement le = localize_at(S, {0}, {-1, 0}, 6);
  REQUIRE(le.ok);
  CHECK(le.shift == LatticeVec{1, 0});
  CHECK(le.value == mono(2, {-1, 0}));
}

TEST_CASE("the basis-wise freezing operator is not multiplicative") {
  const Seed s = load_seed(kData + "one_frozen.json");
  const PointedSet S = make_cluster_monomial_set(s, 4);
  const std::vector<int> F{0};

  const LaurentElement x1 = *S.at({1, 0});
  const LaurentElement x1p = *S.at({-1, 0});
  const LaurentElement prod = twisted_mul(x1, x1p, s.lambda);

  // Through the family: both members of 1 + x2 survive at their own degrees.
  CHECK(freeze_along_basis(prod, S, F) == mono(2, {0, 0}) + mono(2, {0, 1}));
  // Memberwise first: x1' loses its dressed term, the product collapses.
  const LaurentElement collapsed =
      twisted_mul(freeze_pointed(x1, s, F), freeze_pointed(x1p, s, F), s.lambda);
  CHECK(collapsed == mono(2, {0, 0}));
}

TEST_CASE("corrupted families leave support witnesses") {
  const Seed s = load_seed(kData + "one_frozen.json");
  const PointedSet S = make_cluster_monomial_set(s, 4);

  // Corrupt the member at (1,1) with a dressed term no monomial product has.
  PointedSet C = S;
  C.cache = std::make_shared<std::map<LatticeVec, std::optional<LaurentElement>>>();
  const auto base = S.gen;
  C.gen = [base](const LatticeVec& g) -> std::optional<LaurentElement> {
    if (g == LatticeVec{1, 1})
      return mono(2, {1, 1}) + mono(2, {1, 2});
    return base(g);
  };
  const CheckReport rep =
      check_local_support(C, {{LatticeVec{1, 0}, LatticeVec{0, 1}}}, true);
  CHECK_FALSE(rep.ok);
  CHECK(rep.fast_path == 0);
  // Support leaves the union, its dimension overshoots, and the strict drop
  // fails at the degree the runaway term forces into the row.
  REQUIRE(rep.witnesses.size() == 3);

  // A corruption at the bottom makes elimination run away; the guard reports.
  const Seed a2 = load_seed(kData + "a2.json");
  const PointedSet A = make_cluster_monomial_set(a2, 6);
  PointedSet D = A;
  D.cache = std::make_shared<std::map<LatticeVec, std::optional<LaurentElement>>>();
  const auto abase = A.gen;
  D.gen = [abase](const LatticeVec& g) -> std::optional<LaurentElement> {
    if (g == LatticeVec{0, 0})
      return mono(2, {0, 0}) + mono(2, {0, -1});
    return abase(g);
  };
  const LaurentElement z = mono(2, {0, 0}) + mono(2, {0, 1});
  CHECK_THROWS_AS(decompose(z, D), NotInSpanError);

  // Degrees outside the reachable fan are reported missing, not invented.
  const Seed kron = load_seed(kData + "kronecker.json");
  const PointedSet K = make_cluster_monomial_set(kron, 6);
  CHECK_FALSE(K.at({-1, 1}).has_value());
  CHECK_THROWS_AS(decompose(mono(2, {-1, 1}), K), NotInSpanError);
}

TEST_CASE("theta and cluster families coincide on the pentagon box") {
  const Seed a2 = load_seed(kData + "a2.json");
  const PointedSet S = make_cluster_monomial_set(a2, 6);
  const ScatteringDiagram D = complete_rank2(a2, 8);
  const PointedSet T = make_theta_set(D);

  const auto box = degree_box(2, 2);
  for (const auto& g : box) {
    REQUIRE(T.at(g).has_value());
    const TransitionRow row = decompose(*T.at(g), S);
    REQUIRE(row.size() == 1);
    CHECK(row.begin()->first == g);
    CHECK(row.begin()->second.is_one());
  }
  CHECK(equal_spans_on_box(T, S, box).ok);

  // Products of cluster monomials: positive, so the fast path settles all.
  std::vector<std::pair<LatticeVec, LatticeVec>> pairs;
  for (const auto& g1 : degree_box(2, 1))
    for (const auto& g2 : degree_box(2, 1)) pairs.emplace_back(g1, g2);
  const CheckReport fast = check_local_support(S, pairs, true);
  CHECK(fast.ok);
  CHECK(fast.fast_path == fast.checked);
  CHECK(check_local_support(S, pairs, false).ok);
}

TEST_CASE("freezing images span the frozen seed's family") {
  const Seed a2 = load_seed(kData + "a2.json");
  const PointedSet S = make_cluster_monomial_set(a2, 6);
  const PointedSet Z = basis_by_freezing(S, {0});
  const PointedSet Fc = make_cluster_monomial_set(a2.freeze({0}), 4);

  const auto box = degree_box(2, 2);
  CHECK(equal_spans_on_box(Z, Fc, box).ok);

  // Image families of mutually unitriangular families span the same box.
  PointedSet P = S;
  P.cache = std::make_shared<std::map<LatticeVec, std::optional<LaurentElement>>>();
  const auto base = S.gen;
  P.gen = [base](const LatticeVec& g) -> std::optional<LaurentElement> {
    if (g == LatticeVec{2, 1}) {
      auto z = base(g);
      auto w = base(LatticeVec{2, 0});
      if (z && w) *z += *w;
      return z;
    }
    return base(g);
  };
  CHECK(equal_spans_on_box(basis_by_freezing(P, {0}), Z, box).ok);
}

TEST_CASE("perturbed families stay unitriangular both ways") {
  const Seed a2 = load_seed(kData + "a2.json");
  const PointedSet S = make_cluster_monomial_set(a2, 6);
  PointedSet Z = S;
  Z.cache = std::make_shared<std::map<LatticeVec, std::optional<LaurentElement>>>();
  const auto base = S.gen;
  Z.gen = [base](const LatticeVec& g) -> std::optional<LaurentElement> {
    if (g == LatticeVec{2, 1}) {
      auto z = base(g);
      auto w = base(LatticeVec{2, 0});
      if (z && w) *z += *w;
      return z;
    }
    return base(g);
  };

  const TransitionRow fwd = decompose(*Z.at({2, 1}), S);
  const TransitionRow want{{{2, 1}, VCoeff::one()}, {{2, 0}, VCoeff::one()}};
  CHECK(fwd == want);
  const TransitionRow bwd = decompose(*S.at({2, 1}), Z);
  REQUIRE(bwd.size() == 2);
  CHECK(bwd.at({2, 1}).is_one());
  CHECK(bwd.at({2, 0}) == -VCoeff::one());
  CHECK(is_unitriangular_row(fwd, {2, 1}, a2));
  CHECK(is_unitriangular_row(bwd, {2, 1}, a2));

  CHECK(check_local_transition(Z, S, {LatticeVec{2, 1}, LatticeVec{0, 0}}).ok);

  // Lowered-coefficient rows: everything off the diagonal in v^{-1}Z[v^{-1}].
  TransitionRow low{{{1, 1}, VCoeff::one()},
                    {{1, 0}, VCoeff::vpow(-1) + VCoeff::vpow(-3, Int(2))}};
  CHECK(row_coeffs_lowered(low, {1, 1}));
  CHECK(is_unitriangular_row(low, {1, 1}, a2));
  TransitionRow flat{{{1, 1}, VCoeff::one()}, {{1, 0}, VCoeff::one()}};
  CHECK_FALSE(row_coeffs_lowered(flat, {1, 1}));
}

TEST_CASE("quantum products decompose with unitriangular rows") {
  const Seed sq = load_seed(kData + "a2_quantum.json");
  const PointedSet S = make_cluster_monomial_set(sq, 6);

  // x1 * x1' lands on the same two degrees as classically, up to v-powers.
  const LaurentElement z =
      twisted_mul(*S.at({1, 0}), *S.at({-1, 0}), sq.lambda)
          .scaled(VCoeff::vpow(-sq.lambda({1, 0}, {-1, 0})));
  const TransitionRow row = decompose(z, S);
  REQUIRE(row.size() == 2);
  CHECK(row.count({0, 0}) == 1);
  CHECK(row.count({0, -1}) == 1);
  CHECK(is_unitriangular_row(row, {0, 0}, sq));

  std::vector<std::pair<LatticeVec, LatticeVec>> pairs;
  for (const auto& g1 : degree_box(2, 1))
    for (const auto& g2 : degree_box(2, 1)) pairs.emplace_back(g1, g2);
  CHECK(check_local_support(S, pairs, false).ok);
}

TEST_CASE("factorization along frozen directions shifts degrees") {
  for (const char* name : {"one_frozen.json", "one_frozen_quantum.json"}) {
    const Seed s = load_seed(kData + name);
    const PointedSet S = make_cluster_monomial_set(s, 4);
    const CheckReport rep = check_factorization(S, 1, degree_box(2, 2));
    CHECK(rep.ok);
    CHECK(rep.checked == 25);
  }
}

TEST_CASE("shift products recover shifted members through freezing") {
  const Seed s = load_seed(kData + "one_frozen.json");
  const PointedSet S = make_cluster_monomial_set(s, 4);
  for (long long d : {1, 2}) {
    const CheckReport rep = check_shift_product(S, 0, d, degree_box(2, 2));
    CHECK(rep.ok);
    CHECK(rep.checked > 0);
  }

  for (const char* name : {"a2.json", "a2_quantum.json"}) {
    const Seed a2 = load_seed(kData + name);
    const PointedSet A = make_cluster_monomial_set(a2, 6);
    const CheckReport rep = check_shift_product(A, 0, 2, degree_box(2, 2));
    CHECK(rep.ok);
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("frozen theta families match pushed diagram families") {
  const Seed a2 = load_seed(kData + "a2.json");
  const ScatteringDiagram D = complete_rank2(a2, 8);
  const PointedSet T = make_theta_set(D);
  const PointedSet TF = basis_by_freezing(T, {0});
  const PointedSet TP = make_theta_set(freeze_pushforward(D, {0}));

  for (const LatticeVec& g : std::vector<LatticeVec>{
           {2, 1}, {0, 0}, {-1, 0}, {-1, -1}, {1, -2}, {-2, 1}}) {
    REQUIRE(TF.at(g).has_value());
    REQUIRE(TP.at(g).has_value());
    CHECK(*TF.at(g) == *TP.at(g));
  }
}
