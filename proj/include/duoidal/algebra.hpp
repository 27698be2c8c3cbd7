#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "duoidal/error.hpp"
#include "duoidal/linalg.hpp"
#include "duoidal/report.hpp"

namespace duoidal {

inline Vector basis_vector(std::size_t n, std::size_t i) {
  Vector v(n, 0);
  v.at(i) = 1;
  return v;
}

// Finite-dimensional associative unital algebra given by structure
// constants: e_i e_j = products[i * dim + j].
class FDAlgebra {
 public:
  FDAlgebra(PrimeField field, std::size_t dim, std::vector<Vector> products, Vector unit, bool validate = true)
      : F_(field), n_(dim), prod_(std::move(products)), unit_(std::move(unit)) {
    if (prod_.size() != n_ * n_) throw DimensionError("algebra: expected dim^2 structure vectors");
    for (auto const& v : prod_)
      if (v.size() != n_) throw DimensionError("algebra: structure vector of wrong length");
    if (unit_.size() != n_) throw DimensionError("algebra: unit of wrong length");
    for (auto& v : prod_)
      for (auto& x : v) x %= F_.prime();
    for (auto& x : unit_) x %= F_.prime();
    if (validate) {
      Report r = check();
      if (auto const* f = r.first_failure()) throw ValidationError("algebra: " + f->name + ": " + f->witness);
    }
  }

  // mul[i][j] lists the coordinates of e_i e_j.
  static FDAlgebra from_table(PrimeField F, const std::vector<std::vector<std::vector<std::int64_t>>>& mul,
                              const std::vector<std::int64_t>& unit, bool validate = true) {
    std::size_t n = mul.size();
    std::vector<Vector> prod;
    for (auto const& row : mul) {
      if (row.size() != n) throw DimensionError("algebra: multiplication table is not square");
      for (auto const& v : row) {
        Vector w;
        for (auto x : v) w.push_back(F.reduce(x));
        prod.push_back(std::move(w));
      }
    }
    Vector u;
    for (auto x : unit) u.push_back(F.reduce(x));
    return {F, n, std::move(prod), std::move(u), validate};
  }

  PrimeField field() const noexcept { return F_; }
  std::size_t dim() const noexcept { return n_; }
  const Vector& unit() const noexcept { return unit_; }
  const Vector& product(std::size_t i, std::size_t j) const { return prod_.at(i * n_ + j); }
  Vector basis(std::size_t i) const { return basis_vector(n_, i); }

  Vector mul(const Vector& u, const Vector& v) const {
    Vector out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (v[j] == 0) continue;
        Residue c = F_.mul(u[i], v[j]);
        auto const& p = prod_[i * n_ + j];
        for (std::size_t k = 0; k < n_; ++k)
          if (p[k] != 0) out[k] = F_.add(out[k], F_.mul(c, p[k]));
      }
    }
    return out;
  }

  // x ↦ v x
  Matrix left_matrix(const Vector& v) const {
    Matrix m(F_, n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      Vector c = mul(v, basis(j));
      for (std::size_t i = 0; i < n_; ++i) m.set(i, j, c[i]);
    }
    return m;
  }
  // x ↦ x v
  Matrix right_matrix(const Vector& v) const {
    Matrix m(F_, n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      Vector c = mul(basis(j), v);
      for (std::size_t i = 0; i < n_; ++i) m.set(i, j, c[i]);
    }
    return m;
  }
  // A⊗A → A
  Matrix mul_matrix() const {
    Matrix m(F_, n_, n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) m.set(k, i * n_ + j, prod_[i * n_ + j][k]);
    return m;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (prod_[i * n_ + j] != prod_[j * n_ + i]) return false;
    return true;
  }

  void require_commutative(const std::string& what) const {
    if (!is_commutative()) throw PreconditionError(what + ": base algebra is not commutative");
  }

  Report check() const {
    Report r;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) {
          if (mul(prod_[i * n_ + j], basis(k)) != mul(basis(i), prod_[j * n_ + k])) {
            r.record("associativity", false,
                     "(e" + std::to_string(i) + ",e" + std::to_string(j) + ",e" + std::to_string(k) + ")");
          }
        }
    r.record("associativity", true);
    for (std::size_t i = 0; i < n_; ++i) {
      if (mul(unit_, basis(i)) != basis(i) || mul(basis(i), unit_) != basis(i)) {
        r.record("unit", false, "e" + std::to_string(i));
      }
    }
    r.record("unit", true);
    return r;
  }

  friend bool operator==(const FDAlgebra& a, const FDAlgebra& b) {
    return a.F_.prime() == b.F_.prime() && a.n_ == b.n_ && a.prod_ == b.prod_ && a.unit_ == b.unit_;
  }

 private:
  PrimeField F_;
  std::size_t n_;
  std::vector<Vector> prod_;
  Vector unit_;
};

// A ⊗ B with basis index i * dim B + k.
inline FDAlgebra tensor_algebra(const FDAlgebra& A, const FDAlgebra& B) {
  PrimeField F = A.field();
  std::size_t n = A.dim() * B.dim();
  std::vector<Vector> prod(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      prod[a * n + b] = tensor(A.product(a / B.dim(), b / B.dim()), B.product(a % B.dim(), b % B.dim()), F);
  return {F, n, std::move(prod), tensor(A.unit(), B.unit(), F)};
}

// R-bimodule: matrices of e_r · (−) and (−) · e_r for every basis element.
class Bimodule {
 public:
  Bimodule(const FDAlgebra& R, std::size_t dim, std::vector<Matrix> left, std::vector<Matrix> right,
           bool validate = true)
      : F_(R.field()), dim_(dim), left_(std::move(left)), right_(std::move(right)) {
    if (left_.size() != R.dim() || right_.size() != R.dim()) {
      throw DimensionError("bimodule: one action matrix per basis element of R required");
    }
    for (auto const* v : {&left_, &right_})
      for (auto const& m : *v)
        if (m.rows() != dim_ || m.cols() != dim_) throw DimensionError("bimodule: action matrix of wrong shape");
    if (validate) {
      Report r = check(R);
      if (auto const* f = r.first_failure()) throw ValidationError("bimodule: " + f->name + ": " + f->witness);
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  PrimeField field() const noexcept { return F_; }
  std::size_t algebra_dim() const noexcept { return left_.size(); }
  const Matrix& left(std::size_t r) const { return left_.at(r); }
  const Matrix& right(std::size_t r) const { return right_.at(r); }
  const std::vector<Matrix>& lefts() const noexcept { return left_; }
  const std::vector<Matrix>& rights() const noexcept { return right_; }

  Matrix left_by(const Vector& r) const { return combine(left_, r); }
  Matrix right_by(const Vector& r) const { return combine(right_, r); }

  // Left and right actions agree.
  bool symmetric() const { return left_ == right_; }

  Report check(const FDAlgebra& R) const {
    Report r;
    Matrix id = Matrix::identity(F_, dim_);
    r.add("left unit", left_by(R.unit()) == id, "1·m ≠ m");
    r.add("right unit", right_by(R.unit()) == id, "m·1 ≠ m");
    for (std::size_t i = 0; i < R.dim(); ++i)
      for (std::size_t j = 0; j < R.dim(); ++j) {
        std::string w = "(e" + std::to_string(i) + ",e" + std::to_string(j) + ")";
        Vector ij = R.product(i, j);
        r.record("left associativity", left_by(ij) == left_[i] * left_[j], w);
        r.record("right associativity", right_by(ij) == right_[j] * right_[i], w);
        r.record("actions commute", left_[i] * right_[j] == right_[j] * left_[i], w);
      }
    r.record("left associativity", true);
    r.record("right associativity", true);
    r.record("actions commute", true);
    return r;
  }

  // Same actions in the basis given by the columns of P.
  Bimodule transported(const FDAlgebra& R, const Matrix& P) const {
    auto Pinv = invert(P);
    if (!Pinv) throw PreconditionError("transport: change of basis is singular");
    std::vector<Matrix> l, r;
    for (auto const& m : left_) l.push_back(*Pinv * m * P);
    for (auto const& m : right_) r.push_back(*Pinv * m * P);
    return {R, dim_, std::move(l), std::move(r)};
  }

  friend bool operator==(const Bimodule& a, const Bimodule& b) {
    return a.dim_ == b.dim_ && a.left_ == b.left_ && a.right_ == b.right_;
  }

 private:
  Matrix combine(const std::vector<Matrix>& acts, const Vector& r) const {
    Matrix out(F_, dim_, dim_);
    for (std::size_t i = 0; i < acts.size(); ++i)
      if (r.at(i) != 0) out = out + acts[i].scaled(r[i]);
    return out;
  }

  PrimeField F_;
  std::size_t dim_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

// f: M → N commutes with both actions.
inline bool is_bimodule_map(const Matrix& f, const Bimodule& M, const Bimodule& N) {
  if (f.rows() != N.dim() || f.cols() != M.dim()) return false;
  for (std::size_t r = 0; r < M.algebra_dim(); ++r) {
    if (!(f * M.left(r) == N.left(r) * f) || !(f * M.right(r) == N.right(r) * f)) return false;
  }
  return true;
}

// R with left and right multiplication.
inline Bimodule regular_bimodule(const FDAlgebra& R) {
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < R.dim(); ++i) {
    l.push_back(R.left_matrix(R.basis(i)));
    r.push_back(R.right_matrix(R.basis(i)));
  }
  return {R, R.dim(), std::move(l), std::move(r)};
}

// R⊗R acted on from the left through the first factor and from the right
// through the second.
inline Bimodule enveloping_bimodule(const FDAlgebra& R) {
  std::vector<Matrix> l, r;
  Matrix id = Matrix::identity(R.field(), R.dim());
  for (std::size_t i = 0; i < R.dim(); ++i) {
    l.push_back(tensor(R.left_matrix(R.basis(i)), id));
    r.push_back(tensor(id, R.right_matrix(R.basis(i))));
  }
  return {R, R.dim() * R.dim(), std::move(l), std::move(r)};
}

// An R-module viewed as a bimodule with equal actions.
inline Bimodule symmetric_bimodule(const FDAlgebra& R, std::size_t dim, const std::vector<Matrix>& action) {
  return {R, dim, action, action};
}

inline Bimodule zero_bimodule(const FDAlgebra& R) {
  std::vector<Matrix> z(R.dim(), Matrix(R.field(), 0, 0));
  return {R, 0, z, z};
}

inline Bimodule direct_sum(const FDAlgebra& R, const Bimodule& M, const Bimodule& N) {
  auto block = [&](const Matrix& a, const Matrix& b) {
    Matrix out(R.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out.set(a.rows() + i, a.cols() + j, b(i, j));
    return out;
  };
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < R.dim(); ++i) {
    l.push_back(block(M.left(i), N.left(i)));
    r.push_back(block(M.right(i), N.right(i)));
  }
  return {R, M.dim() + N.dim(), std::move(l), std::move(r)};
}

// E modulo the smallest sub-bimodule containing the given vectors.
inline Bimodule quotient_bimodule(const FDAlgebra& R, const Bimodule& E, const std::vector<Vector>& generators) {
  PrimeField F = R.field();
  std::size_t n = E.dim();
  auto rows_of = [&](const std::vector<Vector>& vs) { return Matrix::from_columns(F, n, vs).transpose(); };
  auto reduce = [&](const std::vector<Vector>& vs) {
    RowEchelon e = rref(rows_of(vs));
    std::vector<Vector> out;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) out.push_back(e.reduced.row(i));
    return out;
  };
  std::vector<Vector> sub = reduce(generators);
  while (true) {
    std::vector<Vector> grown = sub;
    for (auto const& v : sub)
      for (std::size_t r = 0; r < R.dim(); ++r) {
        grown.push_back(E.left(r).apply(v));
        grown.push_back(E.right(r).apply(v));
      }
    std::vector<Vector> next = reduce(grown);
    if (next.size() == sub.size()) break;
    sub = std::move(next);
  }
  QuotientSpace Q(F, n, rows_of(sub));
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < R.dim(); ++i) {
    l.push_back(Q.projection() * E.left(i) * Q.section());
    r.push_back(Q.projection() * E.right(i) * Q.section());
  }
  return {R, Q.dim(), std::move(l), std::move(r)};
}

inline Bimodule cyclic_quotient(const FDAlgebra& R, const std::vector<Vector>& generators) {
  return quotient_bimodule(R, enveloping_bimodule(R), generators);
}

namespace algebras {

inline FDAlgebra field(PrimeField F) { return FDAlgebra::from_table(F, {{{1}}}, {1}); }

// F[t]/t^n in the basis 1, t, ..., t^{n-1}.
inline FDAlgebra truncated_polynomial(PrimeField F, std::size_t n) {
  std::vector<std::vector<std::vector<std::int64_t>>> mul(n, std::vector<std::vector<std::int64_t>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mul[i][j].assign(n, 0);
      if (i + j < n) mul[i][j][i + j] = 1;
    }
  std::vector<std::int64_t> unit(n, 0);
  unit[0] = 1;
  return FDAlgebra::from_table(F, mul, unit);
}

inline FDAlgebra dual_numbers(PrimeField F) { return truncated_polynomial(F, 2); }

// F^n with idempotent basis.
inline FDAlgebra split(PrimeField F, std::size_t n) {
  std::vector<std::vector<std::vector<std::int64_t>>> mul(n, std::vector<std::vector<std::int64_t>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mul[i][j].assign(n, 0);
      if (i == j) mul[i][j][i] = 1;
    }
  return FDAlgebra::from_table(F, mul, std::vector<std::int64_t>(n, 1));
}

inline FDAlgebra product(const FDAlgebra& A, const FDAlgebra& B) {
  PrimeField F = A.field();
  std::size_t n = A.dim() + B.dim();
  std::vector<Vector> prod(n * n, Vector(n, 0));
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      for (std::size_t k = 0; k < A.dim(); ++k) prod[i * n + j][k] = A.product(i, j)[k];
  for (std::size_t i = 0; i < B.dim(); ++i)
    for (std::size_t j = 0; j < B.dim(); ++j)
      for (std::size_t k = 0; k < B.dim(); ++k) prod[(A.dim() + i) * n + A.dim() + j][A.dim() + k] = B.product(i, j)[k];
  Vector unit(n, 0);
  for (std::size_t k = 0; k < A.dim(); ++k) unit[k] = A.unit()[k];
  for (std::size_t k = 0; k < B.dim(); ++k) unit[A.dim() + k] = B.unit()[k];
  return {F, n, std::move(prod), std::move(unit)};
}

// F[s,t]/(s,t)^2 in the basis 1, s, t.
inline FDAlgebra square_zero_plane(PrimeField F) {
  return FDAlgebra::from_table(F,
                               {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}},
                                {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}},
                               {1, 0, 0});
}

struct NamedAlgebra {
  std::string name;
  FDAlgebra algebra;
};

// Commutative algebras of dimension at most 3.
inline std::vector<NamedAlgebra> small_commutative(PrimeField F) {
  return {{"F", field(F)},
          {"F[t]/t^2", dual_numbers(F)},
          {"FxF", split(F, 2)},
          {"F[t]/t^3", truncated_polynomial(F, 3)},
          {"FxFxF", split(F, 3)},
          {"FxF[t]/t^2", product(field(F), dual_numbers(F))},
          {"F[s,t]/(s,t)^2", square_zero_plane(F)}};
}

}  // namespace algebras

}  // namespace duoidal
