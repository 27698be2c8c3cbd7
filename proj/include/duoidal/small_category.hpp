#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "duoidal/report.hpp"
#include "duoidal/span.hpp"

namespace duoidal {

// A bimonoid in span(X): arrows, identities and a composition table defined
// exactly on pairs (a,b) with s(a) = t(b). Δ and ε are the diagonal and
// (t,s); they are derived, not stored.
class SmallCategory {
 public:
  // `compose` is dense: entry a * |A| + b holds a.b, or npos.
  SmallCategory(SpanPtr arrows, std::vector<std::size_t> identity, std::vector<std::size_t> compose,
                bool validate = true)
      : A_(std::move(arrows)), id_(std::move(identity)), comp_(std::move(compose)) {
    if (id_.size() != A_->objects().size()) throw DimensionError("category: one identity per object required");
    if (comp_.size() != A_->size() * A_->size()) throw DimensionError("category: composition table has wrong size");
    for (auto i : id_)
      if (i >= A_->size()) throw ValidationError("category: identity outside the arrow set");
    for (auto c : comp_)
      if (c != npos && c >= A_->size()) throw ValidationError("category: composite outside the arrow set");
    if (validate) {
      Report r = check_laws();
      if (auto const* f = r.first_failure()) throw ValidationError("category: " + f->name + ": " + f->witness);
    }
  }

  static SmallCategory from_names(const ObjectSet& X,
                                  const std::vector<std::tuple<std::string, std::string, std::string>>& arrows,
                                  const std::map<std::string, std::string>& identities,
                                  const std::vector<std::tuple<std::string, std::string, std::string>>& compose,
                                  bool validate = true) {
    SpanPtr A = Span::from_arrows(X, arrows);
    std::vector<std::size_t> id(X.size(), npos);
    for (auto const& [obj, arrow] : identities) id[X.index(obj)] = A->index(arrow);
    for (std::size_t x = 0; x < X.size(); ++x)
      if (id[x] == npos) throw ValidationError("category: missing identity for '" + X.label(x) + "'");
    std::vector<std::size_t> table(A->size() * A->size(), npos);
    for (auto const& [f, g, fg] : compose) {
      std::size_t i = A->index(f) * A->size() + A->index(g);
      if (table[i] != npos) throw ValidationError("category: composite " + f + "." + g + " given twice");
      table[i] = A->index(fg);
    }
    return {A, std::move(id), std::move(table), validate};
  }

  const SpanPtr& arrows_ptr() const noexcept { return A_; }
  const Span& arrows() const noexcept { return *A_; }
  const ObjectSet& objects() const noexcept { return A_->objects(); }
  std::size_t size() const noexcept { return A_->size(); }
  std::size_t src(std::size_t a) const { return A_->src(a); }
  std::size_t tgt(std::size_t a) const { return A_->tgt(a); }
  std::string name(std::size_t a) const { return A_->name(a); }
  std::size_t identity(std::size_t x) const { return id_.at(x); }
  const std::vector<std::size_t>& identities() const noexcept { return id_; }
  const std::vector<std::size_t>& table() const noexcept { return comp_; }

  bool composable(std::size_t a, std::size_t b) const { return A_->src(a) == A_->tgt(b); }
  std::optional<std::size_t> compose(std::size_t a, std::size_t b) const {
    std::size_t c = comp_.at(a * size() + b);
    if (c == npos) return std::nullopt;
    return c;
  }
  // a.b; throws when undefined.
  std::size_t operator()(std::size_t a, std::size_t b) const {
    std::size_t c = comp_.at(a * size() + b);
    if (c == npos) throw ValidationError("composite " + name(a) + "." + name(b) + " undefined");
    return c;
  }

  // Arrows with the given source and target.
  std::vector<std::size_t> hom(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < size(); ++a)
      if (src(a) == from && tgt(a) == to) out.push_back(a);
    return out;
  }

  Report check_laws() const {
    Report r;
    for (std::size_t x = 0; x < id_.size(); ++x) {
      bool ok = src(id_[x]) == x && tgt(id_[x]) == x;
      r.record("identity endpoints", ok, "identity of " + objects().label(x) + " is " + name(id_[x]));
    }
    r.record("identity endpoints", true);
    bool table_ok = true;
    for (std::size_t a = 0; a < size() && table_ok; ++a)
      for (std::size_t b = 0; b < size() && table_ok; ++b) {
        bool defined = comp_[a * size() + b] != npos;
        if (defined != composable(a, b)) {
          table_ok = false;
          r.record("composition domain", false,
                   name(a) + "." + name(b) + (defined ? " defined but not composable" : " composable but undefined"));
        }
      }
    r.record("composition domain", true);
    if (!table_ok) return r;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b) {
        std::size_t c = comp_[a * size() + b];
        if (c == npos) continue;
        if (src(c) != src(b) || tgt(c) != tgt(a)) {
          r.record("composite endpoints", false, name(a) + "." + name(b) + " = " + name(c));
        }
      }
    r.record("composite endpoints", true);
    for (std::size_t a = 0; a < size(); ++a) {
      if (comp_[id_[tgt(a)] * size() + a] != a) r.record("unit law", false, name(a));
      if (comp_[a * size() + id_[src(a)]] != a) r.record("unit law", false, name(a));
    }
    r.record("unit law", true);
    if (!r.passed("composite endpoints")) return r;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b) {
        std::size_t ab = comp_[a * size() + b];
        if (ab == npos) continue;
        for (std::size_t c = 0; c < size(); ++c) {
          std::size_t bc = comp_[b * size() + c];
          if (bc == npos) continue;
          if (comp_[ab * size() + c] != comp_[a * size() + bc]) {
            r.record("associativity", false, "(" + name(a) + "," + name(b) + "," + name(c) + ")");
          }
        }
      }
    r.record("associativity", true);
    return r;
  }

  // μ: A∘A → A
  SpanMap mu() const {
    SpanProduct AA = circ(A_, A_);
    std::vector<std::size_t> f(AA.components.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = (*this)(AA.components[i].first, AA.components[i].second);
    return {AA.span, A_, std::move(f)};
  }
  // η: I → A
  SpanMap eta() const { return {unit_I(objects()), A_, id_}; }
  // Δ: A → A•A, a ↦ (a,a)
  SpanMap Delta() const {
    SpanProduct AA = bullet(A_, A_);
    std::vector<std::size_t> f(size());
    for (std::size_t a = 0; a < size(); ++a) f[a] = AA.at(a, a);
    return {A_, AA.span, std::move(f)};
  }
  // ε: A → J, a ↦ (t(a), s(a))
  SpanMap epsilon() const {
    std::vector<std::size_t> f(size());
    for (std::size_t a = 0; a < size(); ++a) f[a] = j_index(objects(), tgt(a), src(a));
    return {A_, unit_J(objects()), std::move(f)};
  }

  friend bool operator==(const SmallCategory& a, const SmallCategory& b) {
    return *a.A_ == *b.A_ && a.id_ == b.id_ && a.comp_ == b.comp_;
  }

 private:
  SpanPtr A_;
  std::vector<std::size_t> id_;
  std::vector<std::size_t> comp_;
};

// Right A-module in span(X): q.a defined when s(q) = t(a).
class SpanModule {
 public:
  // `action` is dense: entry q * |A| + a holds q.a, or npos.
  SpanModule(const SmallCategory& A, SpanPtr carrier, std::vector<std::size_t> action, bool validate = true)
      : Q_(std::move(carrier)), act_(std::move(action)), arrows_(A.size()) {
    require_same_objects(*Q_, A.arrows());
    if (act_.size() != Q_->size() * A.size()) throw DimensionError("module: action table has wrong size");
    for (auto v : act_)
      if (v != npos && v >= Q_->size()) throw ValidationError("module: action lands outside the carrier");
    if (validate) {
      Report r = check(A);
      if (auto const* f = r.first_failure()) throw ValidationError("module: " + f->name + ": " + f->witness);
    }
  }

  // From γ: Q∘A → Q.
  static SpanModule from_action_map(const SmallCategory& A, const SpanMap& gamma, bool validate = true) {
    SpanProduct QA = circ(gamma.codomain_ptr(), A.arrows_ptr());
    if (!same_span(QA.span, gamma.domain_ptr())) throw DimensionError("module: action map has the wrong domain");
    std::vector<std::size_t> act(gamma.codomain().size() * A.size(), npos);
    for (std::size_t i = 0; i < QA.components.size(); ++i) {
      auto [q, a] = QA.components[i];
      act[q * A.size() + a] = gamma(i);
    }
    return {A, gamma.codomain_ptr(), std::move(act), validate};
  }

  static SpanModule regular(const SmallCategory& A) { return {A, A.arrows_ptr(), A.table()}; }

  const SpanPtr& carrier_ptr() const noexcept { return Q_; }
  const Span& carrier() const noexcept { return *Q_; }
  std::size_t size() const noexcept { return Q_->size(); }
  std::size_t category_size() const noexcept { return arrows_; }
  const std::vector<std::size_t>& table() const noexcept { return act_; }

  std::optional<std::size_t> act(std::size_t q, std::size_t a) const {
    std::size_t v = act_.at(q * arrows_ + a);
    if (v == npos) return std::nullopt;
    return v;
  }
  std::size_t operator()(std::size_t q, std::size_t a) const {
    std::size_t v = act_.at(q * arrows_ + a);
    if (v == npos) throw ValidationError("action " + Q_->name(q) + ".a undefined");
    return v;
  }

  Report check(const SmallCategory& A) const {
    Report r;
    if (A.size() != arrows_) {
      r.add("action domain", false, "module built over a category of different size");
      return r;
    }
    for (std::size_t q = 0; q < size(); ++q)
      for (std::size_t a = 0; a < A.size(); ++a) {
        bool defined = act_[q * arrows_ + a] != npos;
        if (defined != (Q_->src(q) == A.tgt(a))) {
          r.record("action domain", false, Q_->name(q) + "." + A.name(a));
        }
      }
    r.record("action domain", true);
    if (!r.all_passed()) return r;
    for (std::size_t q = 0; q < size(); ++q)
      for (std::size_t a = 0; a < A.size(); ++a) {
        std::size_t qa = act_[q * arrows_ + a];
        if (qa == npos) continue;
        if (Q_->src(qa) != A.src(a) || Q_->tgt(qa) != Q_->tgt(q)) {
          r.record("action endpoints", false, Q_->name(q) + "." + A.name(a) + " = " + Q_->name(qa));
        }
      }
    r.record("action endpoints", true);
    for (std::size_t q = 0; q < size(); ++q) {
      if (act_[q * arrows_ + A.identity(Q_->src(q))] != q) r.record("action unit", false, Q_->name(q));
    }
    r.record("action unit", true);
    if (!r.passed("action endpoints")) return r;
    for (std::size_t q = 0; q < size(); ++q)
      for (std::size_t a = 0; a < A.size(); ++a) {
        std::size_t qa = act_[q * arrows_ + a];
        if (qa == npos) continue;
        for (std::size_t b = 0; b < A.size(); ++b) {
          auto ab = A.compose(a, b);
          if (!ab) continue;
          if (act_[qa * arrows_ + b] != act_[q * arrows_ + *ab]) {
            r.record("action associativity", false, "(" + Q_->name(q) + "," + A.name(a) + "," + A.name(b) + ")");
          }
        }
      }
    r.record("action associativity", true);
    return r;
  }

  // γ: Q∘A → Q
  SpanMap action_map(const SmallCategory& A) const {
    SpanProduct QA = circ(Q_, A.arrows_ptr());
    std::vector<std::size_t> f(QA.components.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = (*this)(QA.components[i].first, QA.components[i].second);
    return {QA.span, Q_, std::move(f)};
  }

 private:
  SpanPtr Q_;
  std::vector<std::size_t> act_;
  std::size_t arrows_;
};

// A module over some category together with a grade into a (possibly
// different) category. No compatibility is assumed.
struct GradedModule {
  SpanModule module;
  std::vector<std::size_t> grade;
};

// Hopf module over A: c(q.a) = c(q).a.
class HopfModuleSpan {
 public:
  HopfModuleSpan(const SmallCategory& A, SpanModule module, std::vector<std::size_t> grade, bool validate = true)
      : module_(std::move(module)), grade_(std::move(grade)) {
    if (grade_.size() != module_.size()) throw DimensionError("Hopf module: grade does not cover the carrier");
    if (validate) {
      Report r = check(A);
      if (auto const* f = r.first_failure()) throw ValidationError("Hopf module: " + f->name + ": " + f->witness);
    }
  }

  const SpanModule& module() const noexcept { return module_; }
  const Span& carrier() const noexcept { return module_.carrier(); }
  const SpanPtr& carrier_ptr() const noexcept { return module_.carrier_ptr(); }
  std::size_t size() const noexcept { return module_.size(); }
  std::size_t grade(std::size_t q) const { return grade_.at(q); }
  const std::vector<std::size_t>& grades() const noexcept { return grade_; }

  // c: Q → A
  SpanMap grade_map(const SmallCategory& A) const { return {carrier_ptr(), A.arrows_ptr(), grade_}; }

  Report check(const SmallCategory& A) const {
    Report r = module_.check(A);
    const Span& Q = carrier();
    for (std::size_t q = 0; q < Q.size(); ++q) {
      std::size_t c = grade_[q];
      if (c >= A.size() || A.src(c) != Q.src(q) || A.tgt(c) != Q.tgt(q)) {
        r.record("grade is a span map", false, Q.name(q));
      }
    }
    r.record("grade is a span map", true);
    if (!r.all_passed()) return r;
    for (std::size_t q = 0; q < Q.size(); ++q)
      for (std::size_t a = 0; a < A.size(); ++a) {
        auto qa = module_.act(q, a);
        if (!qa) continue;
        if (grade_[*qa] != A(grade_[q], a)) r.record("Hopf compatibility", false, Q.name(q) + "." + A.name(a));
      }
    r.record("Hopf compatibility", true);
    return r;
  }

 private:
  SpanModule module_;
  std::vector<std::size_t> grade_;
};

// Comodule monoid: a category B over the same objects as A with a functor
// c: B → A that is the identity on objects.
class ComoduleMonoidSpan {
 public:
  ComoduleMonoidSpan(SmallCategory total, SmallCategory base, std::vector<std::size_t> grade)
      : B_(std::move(total)), A_(std::move(base)), c_(std::move(grade)) {
    require_same_objects(B_.arrows(), A_.arrows());
    if (c_.size() != B_.size()) throw DimensionError("comodule monoid: grade does not cover B");
    for (auto v : c_)
      if (v >= A_.size()) throw ValidationError("comodule monoid: grade lands outside A");
  }

  static ComoduleMonoidSpan trivial(const SmallCategory& A) {
    std::vector<std::size_t> id(A.size());
    for (std::size_t a = 0; a < id.size(); ++a) id[a] = a;
    return {A, A, std::move(id)};
  }

  const SmallCategory& total() const noexcept { return B_; }
  const SmallCategory& base() const noexcept { return A_; }
  std::size_t grade(std::size_t b) const { return c_.at(b); }
  const std::vector<std::size_t>& grades() const noexcept { return c_; }

 private:
  SmallCategory B_;
  SmallCategory A_;
  std::vector<std::size_t> c_;
};

// Object of set/X: a finite set with an anchor map, stored as a span with
// src = tgt = anchor.
class SliceObject {
 public:
  SliceObject(const ObjectSet& X, std::vector<std::string> names, const std::vector<std::size_t>& anchor)
      : Z_(Span::make(X, std::move(names), anchor, anchor)) {}
  explicit SliceObject(SpanPtr span) : Z_(std::move(span)) {
    for (std::size_t i = 0; i < Z_->size(); ++i)
      if (Z_->src(i) != Z_->tgt(i)) throw ValidationError("slice: element '" + Z_->name(i) + "' is not a loop");
  }

  const SpanPtr& span() const noexcept { return Z_; }
  std::size_t size() const noexcept { return Z_->size(); }
  std::string name(std::size_t i) const { return Z_->name(i); }
  std::size_t anchor(std::size_t i) const { return Z_->src(i); }
  const ObjectSet& objects() const noexcept { return Z_->objects(); }

 private:
  SpanPtr Z_;
};

}  // namespace duoidal
