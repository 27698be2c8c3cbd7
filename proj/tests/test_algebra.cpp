#include <catch_amalgamated.hpp>

#include "duoidal/algebra.hpp"
#include "duoidal/bim_duoidal.hpp"
#include "duoidal/bim_random.hpp"

using namespace duoidal;
using namespace duoidal::random;

namespace {

std::vector<Vector> all_vectors(PrimeField F, std::size_t n) {
  std::vector<Vector> out;
  Vector v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == F.prime()) v[i++] = 0;
    if (i == n) break;
  }
  return out;
}

Residue dot(PrimeField F, const Vector& a, const Vector& b) {
  Residue s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

// Number of functionals on M⊗N that vanish on the tensor relations; equals p^dim of the quotient.
std::size_t balanced_functionals(const FDAlgebra& R, const Bimodule& M, const Bimodule& N, bool circ_kind) {
  PrimeField F = R.field();
  std::size_t m = M.dim(), n = N.dim();
  Matrix IM = Matrix::identity(F, m), IN = Matrix::identity(F, n);
  std::vector<Matrix> diffs;
  for (std::size_t r = 0; r < R.dim(); ++r) {
    if (circ_kind) {
      diffs.push_back(tensor(M.left(r), IN) - tensor(IM, N.left(r)));
      diffs.push_back(tensor(M.right(r), IN) - tensor(IM, N.right(r)));
    } else {
      diffs.push_back(tensor(M.right(r), IN) - tensor(IM, N.left(r)));
    }
  }
  std::size_t count = 0;
  for (auto const& phi : all_vectors(F, m * n)) {
    bool ok = true;
    for (auto const& d : diffs)
      for (std::size_t j = 0; j < m * n && ok; ++j) ok = dot(F, phi, d.column(j)) == 0;
    if (ok) ++count;
  }
  return count;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("catalog algebras are associative and unital", "[algebra]") {
  for (unsigned p : {2u, 3u, 5u}) {
    for (auto const& [name, R] : algebras::small_commutative(PrimeField(p))) {
      INFO(name << " over F" << p);
      CHECK(R.check().all_passed());
      CHECK(R.is_commutative());
      CHECK(regular_bimodule(R).check(R).all_passed());
      CHECK(enveloping_bimodule(R).check(R).all_passed());
      CHECK(enveloping_bimodule(R).dim() == R.dim() * R.dim());
    }
  }
}

TEST_CASE("invalid algebras are rejected", "[algebra][negative]") {
  PrimeField F(3);
  CHECK_THROWS_AS(FDAlgebra::from_table(F, {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}}, {0, 1}), ValidationError);
  CHECK_THROWS_AS(FDAlgebra::from_table(F, {{{1}}}, {2}), ValidationError);
  CHECK_THROWS_AS(FDAlgebra::from_table(F, {{{1, 0}}}, {1, 0}), DimensionError);
  FDAlgebra D = algebras::dual_numbers(F);
  CHECK_THROWS_AS(Bimodule(D, 1, {Matrix::identity(F, 1), Matrix::identity(F, 1)},
                           {Matrix::identity(F, 1), Matrix(F, 1, 1)}),
                  ValidationError);
}

TEST_CASE("multiplication matrices", "[algebra]") {
  PrimeField F(5);
  FDAlgebra R = algebras::truncated_polynomial(F, 3);
  BimRng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Vector u = random_vector(F, 3, rng), v = random_vector(F, 3, rng);
    CHECK(R.left_matrix(u).apply(v) == R.mul(u, v));
    CHECK(R.right_matrix(v).apply(u) == R.mul(u, v));
    CHECK(R.mul_matrix().apply(tensor(u, v, F)) == R.mul(u, v));
  }
  FDAlgebra T = tensor_algebra(R, algebras::dual_numbers(F));
  CHECK(T.dim() == 6);
  CHECK(T.check().all_passed());
}

TEST_CASE("random bimodules are valid", "[algebra][property]") {
  BimRng rng(7);
  for (unsigned p : {3u, 5u})
    for (auto const& [name, R] : algebras::small_commutative(PrimeField(p))) {
      INFO(name);
      for (int i = 0; i < 4; ++i) {
        Bimodule M = random_bimodule(R, 3, rng);
        CHECK(M.check(R).all_passed());
        Bimodule S = random_symmetric_bimodule(R, 3, rng);
        CHECK(S.symmetric());
        Matrix P = random_invertible(R.field(), M.dim(), rng);
        Bimodule T = M.transported(R, P);
        CHECK(T.check(R).all_passed());
        CHECK(is_bimodule_map(*invert(P), M, T));
      }
    }
}

TEST_CASE("tensor product dimensions agree with counted functionals", "[algebra][oracle]") {
  PrimeField F(3);
  BimRng rng(11);
  for (auto const& [name, R] : algebras::small_commutative(F)) {
    if (R.dim() > 2) continue;
    INFO(name);
    BimDuoidal C(R);
    std::vector<BimPtr> mods{C.I(), C.J(), make_bimodule(zero_bimodule(R))};
    for (int i = 0; i < 4; ++i) mods.push_back(make_bimodule(random_bimodule(R, 3, rng)));
    for (auto const& M : mods)
      for (auto const& N : mods) {
        if (M->dim() * N->dim() > 9) continue;
        for (bool circ_kind : {false, true}) {
          TensorPtr T = circ_kind ? C.circ(M, N) : C.bullet(M, N);
          CHECK(ipow(3, T->module->dim()) == balanced_functionals(R, *M, *N, circ_kind));
          CHECK(check_tensor_product(*T).all_passed());
        }
      }
  }
}

TEST_CASE("unit tensor dimensions", "[algebra]") {
  for (auto const& [name, R] : algebras::small_commutative(PrimeField(5))) {
    INFO(name);
    BimDuoidal C(R);
    std::size_t d = R.dim();
    CHECK(C.I()->dim() == d * d);
    CHECK(C.J()->dim() == d);
    CHECK(C.circ(C.J(), C.J())->module->dim() == d);
    CHECK(C.bullet(C.J(), C.J())->module->dim() == d);
    CHECK(C.bullet(C.I(), C.I())->module->dim() == d * d * d);
  }
}

TEST_CASE("direct sums and quotients", "[algebra]") {
  PrimeField F(3);
  FDAlgebra R = algebras::dual_numbers(F);
  Bimodule S = direct_sum(R, regular_bimodule(R), enveloping_bimodule(R));
  CHECK(S.dim() == 6);
  CHECK(S.check(R).all_passed());
  Bimodule Q = cyclic_quotient(R, {Vector{0, 1, 0, 0}});
  CHECK(Q.check(R).all_passed());
  CHECK(Q.dim() < 4);
  CHECK(quotient_bimodule(R, enveloping_bimodule(R), {}).dim() == 4);
}

TEST_CASE("noncommutative base is rejected", "[algebra][negative]") {
  PrimeField F(3);
  FDAlgebra T = FDAlgebra::from_table(
      F, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 0}, {0, 1, 0}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}},
      {1, 0, 1});
  CHECK_FALSE(T.is_commutative());
  CHECK_THROWS_AS(BimDuoidal(T), PreconditionError);
}
