#include <catch_amalgamated.hpp>

#include "duoidal/span_catalog.hpp"
#include "duoidal/span_hopf.hpp"
#include "duoidal/span_random.hpp"

using namespace duoidal;

namespace {

// Brute-force groupoid oracle: every arrow has a two-sided inverse somewhere in the table.
bool groupoid_oracle(const SmallCategory& A) {
  for (std::size_t a = 0; a < A.size(); ++a) {
    bool found = false;
    for (std::size_t b = 0; b < A.size() && !found; ++b) {
      auto ab = A.compose(a, b), ba = A.compose(b, a);
      found = ab && ba && *ab == A.identity(A.tgt(a)) && *ba == A.identity(A.src(a));
    }
    if (!found) return false;
  }
  return true;
}

std::vector<std::size_t> names_to_indices(const Span& S, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (auto const& n : names) out.push_back(S.index(n));
  return out;
}

}  // namespace

TEST_CASE("standard categories satisfy the bimonoid axioms", "[span_hopf]") {
  for (auto const& [name, A] : catalog::standard_corpus()) {
    INFO(name);
    CHECK(A.check_laws().all_passed());
    CHECK(check_bimonoid(A).all_passed());
  }
}

TEST_CASE("groupoid test via beta agrees with the direct test", "[span_hopf][oracle]") {
  auto corpus = catalog::standard_corpus();
  REQUIRE(corpus.size() >= 20);
  std::size_t groupoids = 0;
  for (auto const& [name, A] : corpus) {
    INFO(name);
    bool oracle = groupoid_oracle(A);
    GroupoidVerdict direct = is_groupoid_direct(A);
    GroupoidVerdict beta = is_groupoid_via_beta(A);
    CHECK(direct.groupoid == oracle);
    CHECK(beta.groupoid == oracle);
    if (oracle) {
      ++groupoids;
      for (std::size_t a = 0; a < A.size(); ++a) CHECK(A(a, direct.inverse[a]) == A.identity(A.tgt(a)));
    } else {
      REQUIRE(direct.non_invertible);
      CHECK(verify_non_invertible(A, *direct.non_invertible));
      REQUIRE(beta.certificate);
      CHECK(verify_beta_certificate(A, *beta.certificate));
    }
  }
  CHECK(groupoids > 0);
  CHECK(groupoids < corpus.size());
}

TEST_CASE("walking arrow counterexample", "[span_hopf][regression]") {
  SmallCategory A = catalog::walking_arrow();
  std::size_t x = A.objects().index("x"), y = A.objects().index("y");
  auto inst = counterexample_instances(A);
  REQUIRE(inst.size() == 1);
  CHECK(inst[0] == std::pair<std::size_t, std::size_t>{y, x});

  CounterexampleModule C = counterexample_module(A, y, x);
  const Span& Q = C.module.carrier();
  REQUIRE(Q.size() == 3);
  CHECK(Q.name(0) == "r_x");
  CHECK(Q.name(1) == "q_y");
  CHECK(Q.name(2) == "p_y");
  for (std::size_t q = 0; q < 3; ++q) CHECK(Q.tgt(q) == y);
  CHECK(C.module.check(A).all_passed());
  std::size_t a = A.arrows().index("a");
  CHECK(C.collision == std::array<std::size_t, 3>{1, 2, a});
  CHECK(C.module(1, a) == 0);
  CHECK(C.module(2, a) == 0);

  GroupoidVerdict v = is_groupoid_via_beta(A);
  CHECK_FALSE(v.groupoid);
  REQUIRE(v.certificate);
  REQUIRE(v.certificate->collision);
  CHECK(verify_beta_certificate(A, *v.certificate));
  CHECK(is_groupoid_direct(A).non_invertible == a);

  auto grade = find_hopf_grade(A, C.module);
  REQUIRE(grade);
  CHECK(*grade == names_to_indices(A.arrows(), {"a", "1_y", "1_y"}));
  HopfModuleSpan H(A, C.module, *grade);
  CounitReport cr = fthm_counit(A, H);
  CHECK_FALSE(cr.counit.bijective());
  CHECK_FALSE(cr.inverse);

  CHECK_THROWS_AS(counterexample_module(A, x, y), PreconditionError);
}

TEST_CASE("tampered certificates are rejected", "[span_hopf][negative]") {
  SmallCategory A = catalog::walking_arrow();
  GroupoidVerdict v = is_groupoid_via_beta(A);
  REQUIRE(v.certificate);
  BetaCertificate bad = *v.certificate;
  (*bad.collision)[1] = (*bad.collision)[0];
  CHECK_FALSE(verify_beta_certificate(A, bad));
  BetaCertificate wrong = *v.certificate;
  (*wrong.collision)[2] = A.identity(A.objects().index("y"));
  CHECK_FALSE(verify_beta_certificate(A, wrong));
  CHECK_FALSE(verify_non_invertible(catalog::cyclic_group(2), 1));
}

TEST_CASE("fundamental theorem on groupoids", "[span_hopf][property]") {
  random::Rng rng(17);
  for (auto const& [name, A] : catalog::standard_corpus()) {
    if (!is_groupoid_direct(A).groupoid) continue;
    INFO(name);
    std::vector<HopfModuleSpan> corpus;
    std::vector<SliceObject> slices;
    for (int i = 0; i < 12; ++i) {
      corpus.push_back(random::random_hopf_module(A, 4, rng));
      slices.push_back(random::random_slice(A.objects(), 0, 4, rng));
    }
    Report r = verify_fthm(A, corpus, slices);
    INFO((r.first_failure() ? r.first_failure()->name + ": " + r.first_failure()->witness : ""));
    CHECK(r.all_passed());
    for (auto const& H : corpus) {
      CounitReport cr = fthm_counit(A, H);
      CHECK(cr.counit.bijective());
      CHECK(cr.inverse_verified);
    }
    for (auto const& Z : slices) {
      HopfModuleSpan K = comparison_K(A, Z);
      CHECK(coinvariants(A, K).slice.size() == Z.size());
      CHECK(fthm_unit(A, Z).bijective());
    }
  }
}

TEST_CASE("fundamental theorem fails on non-groupoids with witnesses", "[span_hopf]") {
  random::Rng rng(18);
  for (auto const& [name, A] : catalog::standard_corpus()) {
    if (is_groupoid_direct(A).groupoid) continue;
    INFO(name);
    std::vector<HopfModuleSpan> corpus{random::random_hopf_module(A, 3, rng)};
    Report r = verify_fthm(A, corpus, {random::random_slice(A.objects(), 1, 3, rng)});
    CHECK_FALSE(r.passed("(i) Galois extension"));
    CHECK_FALSE(r.passed("(ii) beta bijective"));
    CHECK(r.passed("(i) and (ii) agree"));
    CHECK(r.passed("consistent with direct groupoid test"));
    CHECK_FALSE(r.find("(ii) beta bijective")->witness.empty());
  }
}

TEST_CASE("coinvariants of the regular module are the identities", "[span_hopf]") {
  for (auto const& [name, A] : catalog::standard_corpus()) {
    INFO(name);
    HopfModuleSpan R(A, SpanModule::regular(A), ComoduleMonoidSpan::trivial(A).grades());
    Coinvariants C = coinvariants(A, R);
    CHECK(C.slice.size() == A.objects().size());
    for (std::size_t k = 0; k < C.inclusion.size(); ++k) CHECK(C.inclusion[k] == A.identity(C.slice.anchor(k)));
  }
}

TEST_CASE("beta lemmas hold on every category", "[span_hopf][property]") {
  random::Rng rng(19);
  for (auto const& [name, A] : catalog::standard_corpus()) {
    INFO(name);
    for (int i = 0; i < 3; ++i) {
      SpanModule Q = random::random_module(A, 3, rng);
      SpanPtr M = random::random_span(A.objects(), 3, rng, "g");
      Report r = check_beta_lemmas(A, Q, M);
      INFO((r.first_failure() ? r.first_failure()->name + ": " + r.first_failure()->witness : ""));
      CHECK(r.all_passed());
      CHECK(r.entries().size() == 4);
    }
  }
}

TEST_CASE("contractions on groupoids", "[span_hopf][property]") {
  random::Rng rng(20);
  for (auto const& [name, A] : catalog::standard_corpus()) {
    INFO(name);
    if (!is_groupoid_direct(A).groupoid) {
      CHECK_THROWS_AS(free_contraction(A, random::random_slice(A.objects(), 1, 2, rng)), PreconditionError);
      continue;
    }
    for (int i = 0; i < 4; ++i) {
      HopfModuleSpan H = random::random_hopf_module(A, 3, rng);
      CHECK(theta_contraction(A, H).all_passed());
      CHECK(free_contraction(A, random::random_slice(A.objects(), 0, 3, rng)).all_passed());
    }
  }
}

TEST_CASE("Galois extensions", "[span_hopf]") {
  random::Rng rng(21);
  for (auto const& [name, A] : catalog::standard_corpus()) {
    INFO(name);
    std::vector<std::pair<std::string, SpanModule>> corpus = decision_modules(A);
    corpus.emplace_back("random", random::random_module(A, 3, rng));
    Verdict v = is_galois(ComoduleMonoidSpan::trivial(A), corpus);
    CHECK(v.holds == groupoid_oracle(A));
    if (!v.holds) CHECK_FALSE(v.witness.empty());
  }
  SmallCategory C2 = catalog::cyclic_group(2);
  ComoduleMonoidSpan P = catalog::projection_comodule(C2, C2);
  CHECK(check_comodule_monoid(P).all_passed());
  CHECK(is_galois(P, {}).holds);
  ComoduleMonoidSpan T = catalog::trivial_grade(C2);
  CHECK(check_comodule_monoid(T).all_passed());
}

TEST_CASE("grade not preserving identities is rejected", "[span_hopf][negative]") {
  SmallCategory C2 = catalog::cyclic_group(2);
  ComoduleMonoidSpan bad(C2, C2, {1, 0});
  Report r = check_comodule_monoid(bad);
  CHECK_FALSE(r.passed("grade unital"));
  CHECK_FALSE(is_galois(bad, {}).holds);

  SmallCategory W = catalog::walking_arrow();
  std::vector<std::size_t> shifted = ComoduleMonoidSpan::trivial(W).grades();
  std::size_t a = W.arrows().index("a");
  shifted[W.identity(W.objects().index("x"))] = a;
  CHECK_THROWS_AS(HopfModuleSpan(W, SpanModule::regular(W), shifted), ValidationError);
}
