#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duoidal/algebra.hpp"
#include "duoidal/linalg.hpp"
#include "duoidal/report.hpp"

namespace duoidal {

using BimPtr = std::shared_ptr<const Bimodule>;

inline BimPtr make_bimodule(Bimodule M) { return std::make_shared<const Bimodule>(std::move(M)); }

inline bool same_bimodule(const BimPtr& a, const BimPtr& b) { return a == b || *a == *b; }

// Bimodule map, kept together with its endpoints.
struct Hom {
  BimPtr dom;
  BimPtr cod;
  Matrix matrix;
};

inline Hom operator*(const Hom& g, const Hom& f) {
  if (!same_bimodule(g.dom, f.cod)) {
    throw DimensionError("compose: codomain of dimension " + std::to_string(f.cod->dim()) +
                         " does not match domain of dimension " + std::to_string(g.dom->dim()));
  }
  return {f.dom, g.cod, g.matrix * f.matrix};
}

inline std::optional<std::string> first_difference(const Hom& a, const Hom& b) {
  if (!same_bimodule(a.dom, b.dom) || !same_bimodule(a.cod, b.cod)) return std::string("paths have different endpoints");
  for (std::size_t j = 0; j < a.matrix.cols(); ++j) {
    if (a.matrix.column(j) != b.matrix.column(j)) return "basis vector " + std::to_string(j);
  }
  return std::nullopt;
}

// M ⊗ N modulo a relation span, with the induced bimodule structure.
struct TensorProduct {
  BimPtr module;
  BimPtr left;
  BimPtr right;
  QuotientSpace quotient;
  Report stability;  // relations are carried into relations by the outer actions
};
using TensorPtr = std::shared_ptr<const TensorProduct>;

// Index (i,j,k,l) of A⊗B⊗C⊗D sent to (i,k,j,l) of A⊗C⊗B⊗D.
inline Matrix swap_middle(PrimeField F, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  std::size_t n = a * b * c * d;
  Matrix P(F, n, n);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t k = 0; k < c; ++k)
        for (std::size_t l = 0; l < d; ++l) P.set(((i * c + k) * b + j) * d + l, ((i * b + j) * c + k) * d + l, 1);
  return P;
}

// bim(R) for a commutative R: • = ⊗_R, ∘ = ⊗_{R⊗R}, I = R⊗R, J = R.
class BimDuoidal {
 public:
  // Replacements for the relation generators (rows) of the two tensor
  // products; used to corrupt the construction in negative controls.
  struct Hooks {
    std::function<Matrix(const Matrix&)> bullet_relations;
    std::function<Matrix(const Matrix&)> circ_relations;
  };

  explicit BimDuoidal(FDAlgebra R, Hooks hooks = {})
      : R_(std::move(R)), hooks_(std::move(hooks)), I_(make_bimodule(enveloping_bimodule(R_))),
        J_(make_bimodule(regular_bimodule(R_))) {
    R_.require_commutative("bim(R)");
  }

  const FDAlgebra& algebra() const noexcept { return R_; }
  PrimeField field() const noexcept { return R_.field(); }
  const BimPtr& I() const noexcept { return I_; }
  const BimPtr& J() const noexcept { return J_; }

  TensorPtr bullet(const BimPtr& M, const BimPtr& N) const { return product(M, N, false); }
  TensorPtr circ(const BimPtr& M, const BimPtr& N) const { return product(M, N, true); }

  Hom identity(const BimPtr& M) const { return {M, M, Matrix::identity(field(), M->dim())}; }

  Hom bullet_map(const Hom& f, const Hom& g) const {
    return induced(bullet(f.dom, g.dom), tensor(f.matrix, g.matrix), bullet(f.cod, g.cod), "f•g");
  }
  Hom circ_map(const Hom& f, const Hom& g) const {
    return induced(circ(f.dom, g.dom), tensor(f.matrix, g.matrix), circ(f.cod, g.cod), "f∘g");
  }

  // δ: I → I•I, x⊗y ↦ (x⊗1)•(1⊗y)
  Hom delta() const {
    std::size_t n = R_.dim();
    PrimeField F = field();
    Matrix raw(F, n * n * n * n, n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Vector v = tensor(tensor(R_.basis(x), R_.unit(), F), tensor(R_.unit(), R_.basis(y), F), F);
        for (std::size_t i = 0; i < v.size(); ++i) raw.set(i, x * n + y, v[i]);
      }
    TensorPtr II = bullet(I_, I_);
    return {I_, II->module, II->quotient.projection() * raw};
  }
  // ϖ: J∘J → J, a∘b ↦ ab
  Hom varpi() const { return induced(circ(J_, J_), R_.mul_matrix(), nullptr, J_, "varpi"); }
  // τ: I → J, a⊗b ↦ ab
  Hom tau() const { return {I_, J_, R_.mul_matrix()}; }

  // ζ: (M•N)∘(M'•N') → (M∘M')•(N∘N')
  Hom interchange(const BimPtr& M, const BimPtr& N, const BimPtr& M2, const BimPtr& N2) const {
    TensorPtr MN = bullet(M, N), M2N2 = bullet(M2, N2);
    TensorPtr MM2 = circ(M, M2), NN2 = circ(N, N2);
    Matrix raw = tensor(MM2->quotient.projection(), NN2->quotient.projection()) *
                 swap_middle(field(), M->dim(), N->dim(), M2->dim(), N2->dim()) *
                 tensor(MN->quotient.section(), M2N2->quotient.section());
    return induced(circ(MN->module, M2N2->module), raw, bullet(MM2->module, NN2->module), "interchange");
  }

  Hom circ_associator(const BimPtr& A, const BimPtr& B, const BimPtr& C) const {
    return associator(A, B, C, true);
  }
  Hom bullet_associator(const BimPtr& A, const BimPtr& B, const BimPtr& C) const {
    return associator(A, B, C, false);
  }

  // I∘M → M, (x⊗y)∘m ↦ x·m·y
  Hom circ_left_unitor(const BimPtr& M) const {
    std::size_t n = R_.dim(), m = M->dim();
    Matrix raw(field(), m, n * n * m);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Matrix a = M->left(x) * M->right(y);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t k = 0; k < m; ++k) raw.set(k, (x * n + y) * m + i, a(k, i));
      }
    return induced(circ(I_, M), raw, nullptr, M, "left unitor for ∘");
  }
  // M∘I → M, m∘(x⊗y) ↦ x·m·y
  Hom circ_right_unitor(const BimPtr& M) const {
    std::size_t n = R_.dim(), m = M->dim();
    Matrix raw(field(), m, m * n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Matrix a = M->left(x) * M->right(y);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t k = 0; k < m; ++k) raw.set(k, i * n * n + x * n + y, a(k, i));
      }
    return induced(circ(M, I_), raw, nullptr, M, "right unitor for ∘");
  }
  // J•M → M, r•m ↦ r·m
  Hom bullet_left_unitor(const BimPtr& M) const {
    std::size_t n = R_.dim(), m = M->dim();
    Matrix raw(field(), m, n * m);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) raw.set(k, r * m + i, M->left(r)(k, i));
    return induced(bullet(J_, M), raw, nullptr, M, "left unitor for •");
  }
  // M•J → M, m•r ↦ m·r
  Hom bullet_right_unitor(const BimPtr& M) const {
    std::size_t n = R_.dim(), m = M->dim();
    Matrix raw(field(), m, m * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) raw.set(k, i * n + r, M->right(r)(k, i));
    return induced(bullet(M, J_), raw, nullptr, M, "right unitor for •");
  }

  // Inverse of an invertible Hom.
  static Hom inverse(const Hom& f) {
    auto inv = invert(f.matrix);
    if (!inv) throw PreconditionError("map is not invertible");
    return {f.cod, f.dom, *inv};
  }

  Hom induced(const TensorPtr& dom, const Matrix& raw, const TensorPtr& cod, const std::string& what) const {
    return induced(dom, raw, cod, cod->module, what);
  }

  // proj_cod · raw · sec_dom, after checking that raw carries the relations
  // of dom into those of cod.
  Hom induced(const TensorPtr& dom, const Matrix& raw, const TensorPtr& cod, const BimPtr& cod_module,
              const std::string& what) const {
    Matrix proj = cod ? cod->quotient.projection() : Matrix::identity(field(), cod_module->dim());
    if (dom->quotient.dim() < dom->quotient.ambient_dim()) {
      if (!(proj * raw * dom->quotient.relation_basis()).is_zero()) {
        throw ValidationError(what + " is not well defined on the quotient");
      }
    }
    return {dom->module, cod_module, proj * raw * dom->quotient.section()};
  }

 private:
  TensorPtr product(const BimPtr& M, const BimPtr& N, bool circ_kind) const {
    auto& cache = circ_kind ? circ_cache_ : bullet_cache_;
    auto key = std::make_pair(M.get(), N.get());
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    TensorPtr T = build(M, N, circ_kind);
    cache.emplace(key, T);
    return T;
  }

  TensorPtr build(const BimPtr& M, const BimPtr& N, bool circ_kind) const {
    PrimeField F = field();
    std::size_t m = M->dim(), n = N->dim(), d = m * n;
    Matrix IM = Matrix::identity(F, m), IN = Matrix::identity(F, n);
    std::vector<Vector> gens;
    auto add_relations = [&](const Matrix& lhs, const Matrix& rhs) {
      Matrix diff = lhs - rhs;
      for (std::size_t j = 0; j < d; ++j) {
        Vector v = diff.column(j);
        bool zero = true;
        for (auto x : v) zero = zero && x == 0;
        if (!zero) gens.push_back(std::move(v));
      }
    };
    for (std::size_t r = 0; r < R_.dim(); ++r) {
      if (circ_kind) {
        add_relations(tensor(M->left(r), IN), tensor(IM, N->left(r)));
        add_relations(tensor(M->right(r), IN), tensor(IM, N->right(r)));
      } else {
        add_relations(tensor(M->right(r), IN), tensor(IM, N->left(r)));
      }
    }
    Matrix rel = gens.empty() ? Matrix(F, 0, d) : Matrix::from_columns(F, d, gens).transpose();
    auto const& hook = circ_kind ? hooks_.circ_relations : hooks_.bullet_relations;
    if (hook) rel = hook(rel);
    QuotientSpace Q(F, d, rel);

    Report stab;
    std::vector<Matrix> l, r;
    Matrix rb = Q.relation_basis();
    bool has_rel = Q.dim() < d;
    auto act = [&](const Matrix& raw, const std::string& name) {
      if (has_rel) stab.record(name, (Q.projection() * raw * rb).is_zero(), "relation not preserved");
      return Q.projection() * raw * Q.section();
    };
    for (std::size_t i = 0; i < R_.dim(); ++i) {
      l.push_back(act(tensor(M->left(i), IN), "left action well defined"));
      r.push_back(act(circ_kind ? tensor(M->right(i), IN) : tensor(IM, N->right(i)), "right action well defined"));
      if (circ_kind) {
        Matrix dl = Q.projection() * (tensor(M->left(i), IN) - tensor(IM, N->left(i))) * Q.section();
        Matrix dr = Q.projection() * (tensor(M->right(i), IN) - tensor(IM, N->right(i))) * Q.section();
        stab.record("actions agree through either factor", dl.is_zero() && dr.is_zero(),
                    "e" + std::to_string(i) + " acts differently on the two factors");
      }
    }
    Bimodule P(R_, Q.dim(), std::move(l), std::move(r), false);
    stab.append(P.check(R_));
    return std::make_shared<const TensorProduct>(
        TensorProduct{make_bimodule(std::move(P)), M, N, std::move(Q), std::move(stab)});
  }

  Hom associator(const BimPtr& A, const BimPtr& B, const BimPtr& C, bool circ_kind) const {
    TensorPtr AB = product(A, B, circ_kind), BC = product(B, C, circ_kind);
    PrimeField F = field();
    Matrix raw = tensor(Matrix::identity(F, A->dim()), BC->quotient.projection()) *
                 tensor(AB->quotient.section(), Matrix::identity(F, C->dim()));
    return induced(product(AB->module, C, circ_kind), raw, product(A, BC->module, circ_kind),
                   circ_kind ? "associator for ∘" : "associator for •");
  }

  FDAlgebra R_;
  Hooks hooks_;
  BimPtr I_;
  BimPtr J_;
  using Cache = std::map<std::pair<const Bimodule*, const Bimodule*>, TensorPtr>;
  mutable Cache bullet_cache_;
  mutable Cache circ_cache_;
};

namespace detail {

struct BimDiagrams {
  const BimDuoidal& C;

  Hom id(const BimPtr& M) const { return C.identity(M); }

  std::optional<std::string> circ_hexagon(const std::array<BimPtr, 6>& v) const {
    auto const& [A, B, Cc, D, E, F] = v;
    BimPtr EF = C.bullet(E, F)->module;
    BimPtr AC = C.circ(A, Cc)->module, BD = C.circ(B, D)->module;
    BimPtr CE = C.circ(Cc, E)->module, DF = C.circ(D, F)->module;
    Hom lhs = C.bullet_map(C.circ_associator(A, Cc, E), C.circ_associator(B, D, F)) * C.interchange(AC, BD, E, F) *
              C.circ_map(C.interchange(A, B, Cc, D), id(EF));
    BimPtr AB = C.bullet(A, B)->module, CD = C.bullet(Cc, D)->module;
    Hom rhs = C.interchange(A, B, CE, DF) * C.circ_map(id(AB), C.interchange(Cc, D, E, F)) * C.circ_associator(AB, CD, EF);
    return first_difference(lhs, rhs);
  }

  std::optional<std::string> bullet_hexagon(const std::array<BimPtr, 6>& v) const {
    auto const& [A, B, Cc, D, E, F] = v;
    BimPtr AB = C.bullet(A, B)->module, DE = C.bullet(D, E)->module;
    BimPtr AD = C.circ(A, D)->module, BE = C.circ(B, E)->module, CF = C.circ(Cc, F)->module;
    Hom lhs = C.bullet_associator(AD, BE, CF) * C.bullet_map(C.interchange(A, B, D, E), id(CF)) *
              C.interchange(AB, Cc, DE, F);
    BimPtr BC = C.bullet(B, Cc)->module, EF = C.bullet(E, F)->module;
    Hom rhs = C.bullet_map(id(AD), C.interchange(B, Cc, E, F)) * C.interchange(A, BC, D, EF) *
              C.circ_map(C.bullet_associator(A, B, Cc), C.bullet_associator(D, E, F));
    return first_difference(lhs, rhs);
  }

  std::optional<std::string> unit_I_left(const BimPtr& A, const BimPtr& B) const {
    BimPtr AB = C.bullet(A, B)->module;
    Hom lhs = C.bullet_map(C.circ_left_unitor(A), C.circ_left_unitor(B)) * C.interchange(C.I(), C.I(), A, B) *
              C.circ_map(C.delta(), id(AB));
    return first_difference(lhs, C.circ_left_unitor(AB));
  }
  std::optional<std::string> unit_I_right(const BimPtr& A, const BimPtr& B) const {
    BimPtr AB = C.bullet(A, B)->module;
    Hom lhs = C.bullet_map(C.circ_right_unitor(A), C.circ_right_unitor(B)) * C.interchange(A, B, C.I(), C.I()) *
              C.circ_map(id(AB), C.delta());
    return first_difference(lhs, C.circ_right_unitor(AB));
  }
  std::optional<std::string> unit_J_left(const BimPtr& A, const BimPtr& B) const {
    BimPtr AB = C.circ(A, B)->module;
    Hom lhs = C.bullet_left_unitor(AB) * C.bullet_map(C.varpi(), id(AB)) * C.interchange(C.J(), A, C.J(), B);
    return first_difference(lhs, C.circ_map(C.bullet_left_unitor(A), C.bullet_left_unitor(B)));
  }
  std::optional<std::string> unit_J_right(const BimPtr& A, const BimPtr& B) const {
    BimPtr AB = C.circ(A, B)->module;
    Hom lhs = C.bullet_right_unitor(AB) * C.bullet_map(id(AB), C.varpi()) * C.interchange(A, C.J(), B, C.J());
    return first_difference(lhs, C.circ_map(C.bullet_right_unitor(A), C.bullet_right_unitor(B)));
  }
  std::optional<std::string> mixed_unit(const BimPtr& A, const BimPtr& B) const {
    BimPtr AB = C.circ(A, B)->module;
    BimPtr AI = C.bullet(A, C.I())->module;
    Hom lhs = C.bullet_right_unitor(AB) * C.bullet_map(id(AB), C.circ_left_unitor(C.J())) *
              C.interchange(A, C.I(), B, C.J());
    Hom rhs = C.circ_map(C.bullet_right_unitor(A), id(B)) * C.circ_map(C.bullet_map(id(A), C.tau()), id(B)) *
              C.circ_map(id(AI), C.bullet_right_unitor(B));
    return first_difference(lhs, rhs);
  }

  std::optional<std::string> j_associative() const {
    Hom w = C.varpi();
    return first_difference(w * C.circ_map(w, id(C.J())), w * C.circ_map(id(C.J()), w) * C.circ_associator(C.J(), C.J(), C.J()));
  }
  std::optional<std::string> j_left_unit() const {
    return first_difference(C.varpi() * C.circ_map(C.tau(), id(C.J())), C.circ_left_unitor(C.J()));
  }
  std::optional<std::string> j_right_unit() const {
    return first_difference(C.varpi() * C.circ_map(id(C.J()), C.tau()), C.circ_right_unitor(C.J()));
  }
  std::optional<std::string> i_coassociative() const {
    Hom d = C.delta();
    return first_difference(C.bullet_associator(C.I(), C.I(), C.I()) * C.bullet_map(d, id(C.I())) * d,
                            C.bullet_map(id(C.I()), d) * d);
  }
  std::optional<std::string> i_left_counit() const {
    return first_difference(C.bullet_left_unitor(C.I()) * C.bullet_map(C.tau(), id(C.I())) * C.delta(), id(C.I()));
  }
  std::optional<std::string> i_right_counit() const {
    return first_difference(C.bullet_right_unitor(C.I()) * C.bullet_map(id(C.I()), C.tau()) * C.delta(), id(C.I()));
  }
};

template <typename Fn>
std::optional<std::string> guarded_bim(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return std::string("invalid map: ") + e.what();
  }
}

}  // namespace detail

struct BimAxiomOptions {
  // Six-argument diagrams are instantiated at every assignment when there
  // are at most this many modules, and at cyclic windows otherwise.
  std::size_t exhaustive_limit = 1;
};

// Evaluates the duoidal axiom diagrams of bim(R) as matrix identities, with
// the variables ranging over the supplied bimodules.
inline Report check_duoidal_axioms_bim(const BimDuoidal& C, const std::vector<BimPtr>& modules,
                                       const BimAxiomOptions& options = {}) {
  detail::BimDiagrams d{C};
  Report report;
  auto single = [&](const std::string& name, auto fn) {
    auto w = detail::guarded_bim(fn);
    report.record(name, !w, w.value_or(""));
  };
  single("J monoid associativity", [&] { return d.j_associative(); });
  single("J monoid left unit", [&] { return d.j_left_unit(); });
  single("J monoid right unit", [&] { return d.j_right_unit(); });
  single("I comonoid coassociativity", [&] { return d.i_coassociative(); });
  single("I comonoid left counit", [&] { return d.i_left_counit(); });
  single("I comonoid right counit", [&] { return d.i_right_counit(); });

  std::size_t const k = modules.size();
  using Binary = std::optional<std::string> (detail::BimDiagrams::*)(const BimPtr&, const BimPtr&) const;
  std::vector<std::pair<std::string, Binary>> binary{
      {"unitality I∘(A•B)", &detail::BimDiagrams::unit_I_left},
      {"unitality (A•B)∘I", &detail::BimDiagrams::unit_I_right},
      {"unitality (J•A)∘(J•B)", &detail::BimDiagrams::unit_J_left},
      {"unitality (A•J)∘(B•J)", &detail::BimDiagrams::unit_J_right},
      {"unit compatibility (A•I)∘(B•J)", &detail::BimDiagrams::mixed_unit},
  };
  for (auto const& [name, fn] : binary) {
    report.record(name, true);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        auto w = detail::guarded_bim([&] { return (d.*fn)(modules[a], modules[b]); });
        if (w) report.record(name, false, detail::assignment_label({a, b}) + " " + *w);
      }
  }

  std::vector<std::vector<std::size_t>> tuples;
  if (k > 0 && k <= options.exhaustive_limit) {
    std::vector<std::size_t> idx(6, 0);
    while (true) {
      tuples.push_back(idx);
      std::size_t pos = 0;
      while (pos < 6 && ++idx[pos] == k) idx[pos++] = 0;
      if (pos == 6) break;
    }
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::size_t> idx(6);
      for (std::size_t j = 0; j < 6; ++j) idx[j] = (i + j) % k;
      tuples.push_back(idx);
    }
  }
  using Senary = std::optional<std::string> (detail::BimDiagrams::*)(const std::array<BimPtr, 6>&) const;
  std::vector<std::pair<std::string, Senary>> senary{
      {"associativity hexagon for ∘", &detail::BimDiagrams::circ_hexagon},
      {"associativity hexagon for •", &detail::BimDiagrams::bullet_hexagon},
  };
  for (auto const& [name, fn] : senary) {
    report.record(name, true);
    for (auto const& idx : tuples) {
      std::array<BimPtr, 6> v;
      for (std::size_t j = 0; j < 6; ++j) v[j] = modules[idx[j]];
      auto w = detail::guarded_bim([&] { return (d.*fn)(v); });
      if (w) report.record(name, false, detail::assignment_label(idx) + " " + *w);
    }
  }
  return report;
}

// Well-definedness of a tensor product: relations carried into relations
// by both actions, and the induced structure is a bimodule.
inline Report check_tensor_product(const TensorProduct& T) { return T.stability; }

// [M,R] = 0, i.e. the two actions agree; and separately whether M∘τ is
// invertible. The two must agree.
inline Report check_J_module(const BimDuoidal& C, const BimPtr& M) {
  Report r;
  bool central = M->symmetric();
  bool iso = invert(C.circ_map(C.identity(M), C.tau()).matrix).has_value();
  r.add("[M,R] = 0", central, "left and right actions differ");
  r.add("M∘τ invertible", iso, "M∘τ is singular");
  r.add("criteria agree", central == iso, "[M,R] = 0 and M∘τ invertibility disagree");
  return r;
}

inline bool is_J_module(const BimDuoidal& C, const BimPtr& M) {
  return invert(C.circ_map(C.identity(M), C.tau()).matrix).has_value();
}

// If M∘τ is invertible then so is (M•τ)∘J.
inline Report check_idempotent_criteria(const BimDuoidal& C, const BimPtr& M) {
  Report r;
  bool premise = is_J_module(C, M);
  Hom mt = C.circ_map(C.bullet_map(C.identity(M), C.tau()), C.identity(C.J()));
  bool conclusion = invert(mt.matrix).has_value();
  r.add("ϖ invertible", invert(C.varpi().matrix).has_value(), "J∘J → J is singular");
  r.add("implication holds", !premise || conclusion, "M∘τ invertible but (M•τ)∘J singular");
  return r;
}

}  // namespace duoidal
