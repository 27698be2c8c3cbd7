#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duoidal/error.hpp"

namespace duoidal {

using Residue = std::uint32_t;
using Vector = std::vector<Residue>;

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = 101) : p_(p) {
    if (!is_prime(p) || p >= (1u << 31)) {
      throw Error("modulus " + std::to_string(p) + " is not a prime below 2^31");
    }
  }

  static constexpr bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

  std::uint32_t prime() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept {
    Residue r = 1 % p_;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Residue inv(Residue a) const {
    if (a % p_ == 0) throw Error("division by zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

// Dense row-major matrix over F_p. A matrix with r rows and c columns is a
// linear map F_p^c -> F_p^r acting on column vectors.
class Matrix {
 public:
  Matrix() : Matrix(PrimeField{}, 0, 0) {}
  Matrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
  }

  static Matrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, field.reduce(rows[i][j]));
    }
    return m;
  }

  static Matrix from_rows(PrimeField field,
                          std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::vector<std::int64_t>> v;
    for (auto const& r : rows) v.emplace_back(r);
    return from_rows(field, v);
  }

  static Matrix column_vector(PrimeField field, const Vector& v) {
    Matrix m(field, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
  }

  static Matrix from_columns(PrimeField field, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionError("column of wrong length");
      for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
    }
    return m;
  }

  PrimeField field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Residue v) { data_[r * cols_ + c] = v % field_.prime(); }
  void add_to(std::size_t r, std::size_t c, Residue v) {
    Residue& x = data_[r * cols_ + c];
    x = field_.add(x, v % field_.prime());
  }

  Vector row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw DimensionError("vector length does not match matrix");
    Vector out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        acc += static_cast<std::uint64_t>(data_[i * cols_ + j]) * v[j];
        if (j % 3 == 2) acc %= field_.prime();
      }
      out[i] = static_cast<Residue>(acc % field_.prime());
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    check_field(o);
    if (cols_ != o.rows_) {
      throw DimensionError("cannot multiply " + shape() + " by " + o.shape());
    }
    Matrix out(field_, rows_, o.cols_);
    std::vector<std::uint64_t> acc(o.cols_);
    std::uint64_t const p = field_.prime();
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      std::size_t pending = 0;
      for (std::size_t k = 0; k < cols_; ++k) {
        std::uint64_t a = data_[i * cols_ + k];
        if (a == 0) continue;
        Residue const* brow = o.data_.data() + k * o.cols_;
        for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += a * brow[j];
        if (++pending == 3) {
          for (auto& x : acc) x %= p;
          pending = 0;
        }
      }
      for (std::size_t j = 0; j < o.cols_; ++j) out.data_[i * o.cols_ + j] = static_cast<Residue>(acc[j] % p);
    }
    return out;
  }

  Matrix operator+(const Matrix& o) const { return combine(o, false); }
  Matrix operator-(const Matrix& o) const { return combine(o, true); }

  Matrix scaled(Residue s) const {
    Matrix out(*this);
    for (auto& x : out.data_) x = field_.mul(x, s % field_.prime());
    return out;
  }

  bool is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
  }
  bool is_identity() const noexcept {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (data_[i * cols_ + j] != (i == j ? 1u : 0u)) return false;
    return true;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix out(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) out.data_[i * idx.size() + j] = data_[i * cols_ + idx[j]];
    return out;
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    a.check_field(b);
    if (a.rows_ != b.rows_) throw DimensionError("hstack of " + a.shape() + " and " + b.shape());
    Matrix out(a.field_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) out.data_[i * out.cols_ + j] = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) out.data_[i * out.cols_ + a.cols_ + j] = b(i, j);
    }
    return out;
  }

  static Matrix vstack(const Matrix& a, const Matrix& b) {
    a.check_field(b);
    if (a.cols_ != b.cols_) throw DimensionError("vstack of " + a.shape() + " and " + b.shape());
    Matrix out(a.field_, a.rows_ + b.rows_, a.cols_);
    std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::vector<std::vector<std::int64_t>> to_rows() const {
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  friend struct RowReducer;

  void check_field(const Matrix& o) const {
    if (!(field_ == o.field_)) throw DimensionError("matrices over different prime fields");
  }

  Matrix combine(const Matrix& o, bool subtract) const {
    check_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError("cannot combine " + shape() + " with " + o.shape());
    }
    Matrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      out.data_[i] = subtract ? field_.sub(data_[i], o.data_[i]) : field_.add(data_[i], o.data_[i]);
    }
    return out;
  }

  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

// Kronecker product; basis element (i, k) of the product sits at index
// i * dim(second) + k.
inline Matrix tensor(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw DimensionError("tensor of matrices over different fields");
  Matrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  PrimeField F = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Residue x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          Residue y = b(k, l);
          if (y != 0) out.set(i * b.rows() + k, j * b.cols() + l, F.mul(x, y));
        }
    }
  return out;
}

inline Vector tensor(const Vector& a, const Vector& b, PrimeField F) {
  Vector out(a.size() * b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = F.mul(a[i], b[k]);
  }
  return out;
}

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

struct RowReducer {
  static RowEchelon run(Matrix m) {
    PrimeField const F = m.field_;
    std::size_t const R = m.rows_, C = m.cols_;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> support;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
      std::size_t piv = R;
      for (std::size_t i = r; i < R; ++i) {
        if (m.data_[i * C + c] != 0) {
          piv = i;
          break;
        }
      }
      if (piv == R) continue;
      if (piv != r) {
        std::swap_ranges(m.data_.begin() + static_cast<std::ptrdiff_t>(piv * C),
                         m.data_.begin() + static_cast<std::ptrdiff_t>((piv + 1) * C),
                         m.data_.begin() + static_cast<std::ptrdiff_t>(r * C));
      }
      Residue* prow = m.data_.data() + r * C;
      Residue inv = F.inv(prow[c]);
      support.clear();
      for (std::size_t k = c; k < C; ++k) {
        if (prow[k] != 0) {
          prow[k] = F.mul(prow[k], inv);
          support.push_back(k);
        }
      }
      for (std::size_t i = 0; i < R; ++i) {
        if (i == r) continue;
        Residue* row = m.data_.data() + i * C;
        Residue f = row[c];
        if (f == 0) continue;
        Residue nf = F.neg(f);
        for (std::size_t k : support) row[k] = F.add(row[k], F.mul(nf, prow[k]));
      }
      pivots.push_back(c);
      ++r;
    }
    return {std::move(m), std::move(pivots)};
  }
};

inline RowEchelon rref(Matrix m) { return RowReducer::run(std::move(m)); }

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

// Columns form a basis of the null space.
inline Matrix kernel(const Matrix& m) {
  RowEchelon e = rref(m);
  std::size_t const n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  PrimeField F = m.field();
  Matrix k(F, n, free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    k.set(free_cols[j], j, 1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      k.set(e.pivots[i], j, F.neg(e.reduced(i, free_cols[j])));
    }
  }
  return k;
}

// Some x with m * x == b, if one exists.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  if (m.rows() != b.rows()) throw DimensionError("solve: right-hand side " + b.shape() + " for " + m.shape());
  RowEchelon e = rref(Matrix::hstack(m, b));
  Matrix x(m.field(), m.cols(), b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= m.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(e.pivots[i], j, e.reduced(i, m.cols() + j));
  }
  return x;
}

inline std::optional<Matrix> invert(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  RowEchelon e = rref(Matrix::hstack(m, Matrix::identity(m.field(), n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, e.reduced(i, n + j));
  return inv;
}

// Quotient of F_p^n by the span of a set of relation vectors (the rows of
// `relations`). The basis of the quotient is given by the non-pivot
// coordinates of the reduced relation matrix, so `section` picks standard
// basis vectors and projection * section is the identity.
class QuotientSpace {
 public:
  QuotientSpace(PrimeField field, std::size_t ambient_dim, const Matrix& relations)
      : projection_(field, 0, ambient_dim), section_(field, ambient_dim, 0), ambient_(ambient_dim) {
    if (relations.cols() != ambient_dim) {
      throw DimensionError("relations have " + std::to_string(relations.cols()) + " columns, expected " +
                           std::to_string(ambient_dim));
    }
    RowEchelon e = rref(relations);
    std::vector<bool> is_pivot(ambient_dim, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < ambient_dim; ++c)
      if (!is_pivot[c]) basis_.push_back(c);
    std::vector<std::size_t> position(ambient_dim, 0);
    for (std::size_t k = 0; k < basis_.size(); ++k) position[basis_[k]] = k;

    projection_ = Matrix(field, basis_.size(), ambient_dim);
    section_ = Matrix(field, ambient_dim, basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      projection_.set(k, basis_[k], 1);
      section_.set(basis_[k], k, 1);
    }
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        projection_.set(k, e.pivots[i], field.neg(e.reduced(i, basis_[k])));
      }
    }
    relation_rows_ = Matrix(field, e.pivots.size(), ambient_dim);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      for (std::size_t c = 0; c < ambient_dim; ++c) relation_rows_.set(i, c, e.reduced(i, c));
  }

  static QuotientSpace trivial(PrimeField field, std::size_t n) { return {field, n, Matrix(field, 0, n)}; }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const Matrix& projection() const noexcept { return projection_; }
  const Matrix& section() const noexcept { return section_; }
  // Columns span the relation subspace.
  Matrix relation_basis() const { return relation_rows_.transpose(); }
  const std::vector<std::size_t>& basis_coordinates() const noexcept { return basis_; }
  Vector project(const Vector& v) const { return projection_.apply(v); }
  Vector lift(const Vector& v) const { return section_.apply(v); }

 private:
  Matrix projection_;
  Matrix section_;
  Matrix relation_rows_;
  std::vector<std::size_t> basis_;
  std::size_t ambient_;
};

// Columns form a basis of {v : f v = g v}.
inline Matrix equalizer(const Matrix& f, const Matrix& g) { return kernel(f - g); }

// Codomain of f, g modulo the image of f - g.
inline QuotientSpace coequalizer(const Matrix& f, const Matrix& g) {
  Matrix d = f - g;
  return QuotientSpace(d.field(), d.rows(), d.transpose());
}

}  // namespace duoidal
