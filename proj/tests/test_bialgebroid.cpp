#include <catch_amalgamated.hpp>

#include "duoidal/bialgebroid.hpp"
#include "duoidal/bim_random.hpp"

using namespace duoidal;

namespace {

std::string first_failure(const Report& r) {
  auto const* f = r.first_failure();
  return f ? f->name + ": " + f->witness : "";
}

// For a group algebra: the permutation matrix of g ↦ g⁻¹, read off the multiplication table.
Matrix group_inverse_matrix(const Bialgebroid& B) {
  const FDAlgebra& A = B.algebra();
  std::size_t d = A.dim();
  Matrix S(B.field(), d, d);
  for (std::size_t g = 0; g < d; ++g)
    for (std::size_t h = 0; h < d; ++h)
      if (A.product(g, h) == A.unit()) S.set(h, g, 1);
  return S;
}

// x⊗y ↦ y⊗x on R⊗R.
Matrix flip_matrix(PrimeField F, std::size_t n) {
  Matrix S(F, n * n, n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) S.set(y * n + x, x * n + y, 1);
  return S;
}

std::vector<BimPtr> symmetric_modules(const Bialgebroid& B, std::size_t count, random::BimRng& rng) {
  std::vector<BimPtr> out{make_bimodule(regular_bimodule(B.base())), make_bimodule(zero_bimodule(B.base()))};
  while (out.size() < count) out.push_back(make_bimodule(random::random_symmetric_bimodule(B.base(), 2, rng)));
  return out;
}

}  // namespace

TEST_CASE("catalog bialgebroids satisfy the axioms", "[bialgebroid]") {
  PrimeField F3(3), F5(5);
  std::vector<Bialgebroid> cat{bialgebroids::cyclic_group_algebra(F3, 2),
                               bialgebroids::cyclic_group_algebra(F5, 3),
                               bialgebroids::idempotent_monoid_algebra(F3),
                               bialgebroids::pair_bialgebroid(algebras::dual_numbers(F5)),
                               bialgebroids::pair_bialgebroid(algebras::split(F3, 2)),
                               bialgebroids::group_bundle(F3, 2, 2)};
  for (auto const& B : cat) {
    Report r = check_bialgebroid(B);
    INFO(first_failure(r));
    CHECK(r.all_passed());
    CHECK(check_comodule(B, regular_comodule(B)).all_passed());
    CHECK(check_comodule(B, enveloping_comodule(B)).all_passed());
  }
}

TEST_CASE("group algebra antipode is the inverse", "[bialgebroid][oracle]") {
  for (auto const& B : {bialgebroids::cyclic_group_algebra(PrimeField(3), 2),
                        bialgebroids::cyclic_group_algebra(PrimeField(5), 4)}) {
    AntipodeResult res = compute_antipode(B);
    REQUIRE(res.hopf);
    CHECK(res.well_defined);
    CHECK(*res.S == group_inverse_matrix(B));
    CHECK(check_antipode_axioms(B, *res.S).all_passed());
    CHECK(check_translation_identities(B, res).all_passed());
  }
}

TEST_CASE("symmetric group antipode", "[bialgebroid][oracle][slow]") {
  Bialgebroid B = bialgebroids::symmetric_group_algebra(PrimeField(5));
  AntipodeResult res = compute_antipode(B);
  REQUIRE(res.hopf);
  Matrix expected = group_inverse_matrix(B);
  CHECK(*res.S == expected);
  CHECK_FALSE(expected.is_identity());
  CHECK(check_antipode_axioms(B, *res.S).all_passed());
}

TEST_CASE("pair bialgebroid antipode is the flip", "[bialgebroid][oracle]") {
  for (auto const& R : {algebras::dual_numbers(PrimeField(5)), algebras::split(PrimeField(3), 2),
                        algebras::field(PrimeField(7))}) {
    Bialgebroid B = bialgebroids::pair_bialgebroid(R);
    AntipodeResult res = compute_antipode(B);
    REQUIRE(res.hopf);
    CHECK(res.varsigma.report.map.rows() == R.dim() * R.dim() * R.dim());
    CHECK(*res.S == flip_matrix(R.field(), R.dim()));
    CHECK(check_antipode_axioms(B, *res.S).all_passed());
    Report ids = check_translation_identities(B, res);
    INFO(first_failure(ids));
    CHECK(ids.all_passed());
  }
}

TEST_CASE("group bundle antipode inverts fiberwise", "[bialgebroid][oracle]") {
  PrimeField F(3);
  Bialgebroid B = bialgebroids::group_bundle(F, 2, 3);
  AntipodeResult res = compute_antipode(B);
  REQUIRE(res.hopf);
  Matrix expected(F, 6, 6);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t g = 0; g < 3; ++g) expected.set(x * 3 + (3 - g) % 3, x * 3 + g, 1);
  CHECK(*res.S == expected);
}

TEST_CASE("idempotent monoid is not Hopf", "[bialgebroid][regression]") {
  Bialgebroid B = bialgebroids::idempotent_monoid_algebra(PrimeField(3));
  AntipodeResult res = compute_antipode(B);
  CHECK_FALSE(res.hopf);
  CHECK(res.varsigma.report.rank == 3);
  REQUIRE(res.kernel_witness);
  CHECK(verify_kernel_witness(B, *res.kernel_witness));
  CHECK(describe_tensor(B, *res.kernel_witness) == "2*m⊗1 + 1*m⊗m");
  CHECK_FALSE(verify_kernel_witness(B, Vector{1, 0, 0, 0}));
  CHECK_FALSE(verify_kernel_witness(B, Vector{0, 0, 0, 0}));

  HopfVerdict v = is_hopf_algebroid(B, {});
  CHECK_FALSE(v.holds);
  CHECK_FALSE(v.report.passed("ς̂ invertible"));
  CHECK(v.report.passed("ς on I•A agrees with ς̂"));
  CHECK(v.report.passed("ς consistent on corpus"));
  CHECK(v.witness.find("m⊗") != std::string::npos);
  CHECK_THROWS_AS(dual_fthm_check(B, {}, {}), PreconditionError);
  CHECK_FALSE(check_translation_identities(B, res).all_passed());
}

TEST_CASE("zero antipode violates the convolution identity", "[bialgebroid][negative]") {
  Bialgebroid B = bialgebroids::cyclic_group_algebra(PrimeField(3), 2);
  Matrix zero(B.field(), 2, 2);
  Report r = check_antipode_axioms(B, zero);
  CHECK_FALSE(r.passed("a₁S(a₂) = s(ε(a))"));
  CHECK(r.find("a₁S(a₂) = s(ε(a))")->witness == "a=1");
  CHECK_FALSE(r.passed("S(a₁)a₂ = t(ε(a))"));
  CHECK_FALSE(check_antipode_axioms(B, Matrix(B.field(), 3, 2)).all_passed());

  Bialgebroid P = bialgebroids::pair_bialgebroid(algebras::split(PrimeField(3), 2));
  Report id = check_antipode_axioms(P, P.id());
  CHECK_FALSE(id.all_passed());
}

TEST_CASE("varsigma on comodules agrees with varsigma hat", "[bialgebroid]") {
  random::BimRng rng(41);
  PrimeField F(3);
  for (auto const& B : {bialgebroids::cyclic_group_algebra(F, 2), bialgebroids::idempotent_monoid_algebra(F),
                        bialgebroids::pair_bialgebroid(algebras::split(F, 2)), bialgebroids::group_bundle(F, 2, 2)}) {
    bool hopf = compute_antipode(B).hopf;
    CHECK(varsigma(B, enveloping_comodule(B)).invertible() == hopf);
    std::vector<RightComoduleBim> corpus;
    for (auto const& M : symmetric_modules(B, 5, rng)) {
      RightComoduleBim Q = cofree_comodule(B, M);
      CHECK(check_comodule(B, Q).all_passed());
      corpus.push_back(Q);
    }
    HopfVerdict v = is_hopf_algebroid(B, corpus);
    INFO(first_failure(v.report));
    CHECK(v.holds == hopf);
    CHECK(v.report.passed("ς on I•A agrees with ς̂"));
    CHECK(v.report.passed("ς consistent on corpus"));
  }
}

TEST_CASE("broken comodule is rejected", "[bialgebroid][negative]") {
  Bialgebroid B = bialgebroids::cyclic_group_algebra(PrimeField(3), 2);
  RightComoduleBim Q = regular_comodule(B);
  Q.coaction = Matrix(B.field(), Q.coaction.rows(), Q.coaction.cols());
  CHECK_FALSE(check_comodule(B, Q).passed("coaction counital"));
  CHECK_THROWS_AS(varsigma(B, Q), ValidationError);
}

TEST_CASE("dual fundamental theorem", "[bialgebroid][property]") {
  random::BimRng rng(42);
  PrimeField F3(3), F5(5);
  for (auto const& B : {bialgebroids::cyclic_group_algebra(F3, 2), bialgebroids::pair_bialgebroid(algebras::dual_numbers(F5)),
                        bialgebroids::pair_bialgebroid(algebras::split(F3, 2)), bialgebroids::group_bundle(F3, 2, 2)}) {
    auto mods = symmetric_modules(B, 10, rng);
    std::vector<HopfModuleBim> hopf;
    for (auto const& M : mods) {
      HopfModuleBim G = comparison_G(B, M);
      CHECK(G.check(B).all_passed());
      if (G.dim() > 0) hopf.push_back(transport(B, G, random::random_invertible(B.field(), G.dim(), rng)));
    }
    REQUIRE(hopf.size() >= 9);
    Report r = dual_fthm_check(B, mods, hopf);
    INFO(first_failure(r));
    CHECK(r.all_passed());
    for (auto const& M : mods) {
      DualFthmLeg c = dual_counit(B, M);
      CHECK(c.dims[0] == M->dim());
      CHECK(c.dims[2] == M->dim());
      CHECK(c.map.well_defined);
    }
    for (auto const& X : hopf) {
      CHECK(dual_coinvariants_oracle(B, X).all_passed());
      DualFthmLeg u = dual_unit(B, X);
      CHECK(u.map.invertible());
      CHECK(u.dims[0] == u.dims[2]);
    }
  }
}

TEST_CASE("comparison requires an R-module", "[bialgebroid][negative]") {
  Bialgebroid B = bialgebroids::pair_bialgebroid(algebras::split(PrimeField(3), 2));
  CHECK_THROWS_AS(comparison_G(B, B.category().I()), PreconditionError);
}

TEST_CASE("invalid bialgebroid data is rejected", "[bialgebroid][negative]") {
  Bialgebroid B = bialgebroids::cyclic_group_algebra(PrimeField(3), 2);
  Matrix bad_eps(B.field(), 1, 2);
  bad_eps.set(0, 0, 1);
  CHECK_THROWS_AS(Bialgebroid(B.base(), B.algebra(), B.s(), B.t(), B.Delta_raw(), bad_eps), ValidationError);
  CHECK_THROWS_AS(Bialgebroid(B.base(), B.algebra(), B.s(), B.t(), Matrix(B.field(), 3, 2), B.eps()), DimensionError);
  Bialgebroid raw(B.base(), B.algebra(), B.s(), B.t(), B.Delta_raw(), B.eps());
  CHECK(raw.Delta() == B.Delta());
}
