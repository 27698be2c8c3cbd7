#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "duoidal/error.hpp"

namespace duoidal {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

inline std::string pair_label(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

class ObjectSet {
 public:
  ObjectSet() = default;
  explicit ObjectSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second) throw ValidationError("duplicate object label '" + labels_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<std::size_t> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(const std::string& label) const {
    auto i = find(label);
    if (!i) throw ValidationError("unknown object '" + label + "'");
    return *i;
  }

  friend bool operator==(const ObjectSet& a, const ObjectSet& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

class Span;
using SpanPtr = std::shared_ptr<const Span>;

enum class ProductKind { circ, bullet };

// Element i of a product span is the pair components[i] of left and right
// elements; its name is derived on demand.
struct ProductOrigin {
  ProductKind kind;
  SpanPtr left;
  SpanPtr right;
  std::vector<std::pair<std::size_t, std::size_t>> components;
};

// Finite set of arrows with source and target maps into an ObjectSet.
class Span {
 public:
  Span(ObjectSet objects, std::vector<std::string> names, std::vector<std::size_t> src, std::vector<std::size_t> tgt)
      : objects_(std::move(objects)), names_(std::move(names)), src_(std::move(src)), tgt_(std::move(tgt)) {
    if (src_.size() != names_.size() || tgt_.size() != names_.size()) {
      throw DimensionError("span: names, sources and targets differ in length");
    }
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (src_[i] >= objects_.size() || tgt_[i] >= objects_.size()) {
        throw ValidationError("span: arrow '" + names_[i] + "' has an endpoint outside the object set");
      }
      if (!index_.emplace(names_[i], i).second) throw ValidationError("span: duplicate arrow label '" + names_[i] + "'");
    }
  }

  Span(ObjectSet objects, ProductOrigin origin, std::vector<std::size_t> src, std::vector<std::size_t> tgt)
      : objects_(std::move(objects)),
        src_(std::move(src)),
        tgt_(std::move(tgt)),
        origin_(std::make_shared<const ProductOrigin>(std::move(origin))) {
    if (src_.size() != origin_->components.size() || tgt_.size() != src_.size()) {
      throw DimensionError("span: components, sources and targets differ in length");
    }
  }

  template <typename... Args>
  static SpanPtr make(Args&&... args) {
    return std::make_shared<const Span>(std::forward<Args>(args)...);
  }

  // Convenience: arrows given as (name, src label, tgt label).
  static SpanPtr from_arrows(const ObjectSet& X,
                             const std::vector<std::tuple<std::string, std::string, std::string>>& arrows) {
    std::vector<std::string> names;
    std::vector<std::size_t> s, t;
    for (auto const& [n, a, b] : arrows) {
      names.push_back(n);
      s.push_back(X.index(a));
      t.push_back(X.index(b));
    }
    return make(X, std::move(names), std::move(s), std::move(t));
  }

  const ObjectSet& objects() const noexcept { return objects_; }
  std::size_t size() const noexcept { return src_.size(); }
  bool empty() const noexcept { return src_.empty(); }
  std::string name(std::size_t i) const {
    if (!origin_) return names_.at(i);
    auto [l, r] = origin_->components.at(i);
    return pair_label(origin_->left->name(l), origin_->right->name(r));
  }
  std::size_t src(std::size_t i) const { return src_.at(i); }
  std::size_t tgt(std::size_t i) const { return tgt_.at(i); }
  std::vector<std::string> names() const {
    if (!origin_) return names_;
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(name(i));
    return out;
  }
  const std::vector<std::size_t>& sources() const noexcept { return src_; }
  const std::vector<std::size_t>& targets() const noexcept { return tgt_; }
  const ProductOrigin* origin() const noexcept { return origin_.get(); }

  std::optional<std::size_t> find(const std::string& name) const {
    if (origin_) {
      for (std::size_t i = 0; i < size(); ++i)
        if (this->name(i) == name) return i;
      return std::nullopt;
    }
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw ValidationError("unknown arrow '" + name + "'");
    return *i;
  }

  friend bool operator==(const Span& a, const Span& b);

 private:
  ObjectSet objects_;
  std::vector<std::string> names_;
  std::vector<std::size_t> src_;
  std::vector<std::size_t> tgt_;
  std::unordered_map<std::string, std::size_t> index_;
  std::shared_ptr<const ProductOrigin> origin_;
};

inline bool same_span(const SpanPtr& a, const SpanPtr& b) { return a == b || *a == *b; }

inline bool operator==(const Span& a, const Span& b) {
  if (a.src_ != b.src_ || a.tgt_ != b.tgt_ || !(a.objects_ == b.objects_)) return false;
  if (a.origin_ && b.origin_ && a.origin_->kind == b.origin_->kind && same_span(a.origin_->left, b.origin_->left) &&
      same_span(a.origin_->right, b.origin_->right)) {
    return true;
  }
  if (!a.origin_ && !b.origin_) return a.names_ == b.names_;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.name(i) != b.name(i)) return false;
  return true;
}

inline void require_same_objects(const Span& a, const Span& b) {
  if (!(a.objects() == b.objects())) throw ValidationError("spans over different object sets");
}

// Map of spans: a function on arrows preserving source and target.
class SpanMap {
 public:
  SpanMap(SpanPtr domain, SpanPtr codomain, std::vector<std::size_t> assignment)
      : dom_(std::move(domain)), cod_(std::move(codomain)), f_(std::move(assignment)) {
    require_same_objects(*dom_, *cod_);
    if (f_.size() != dom_->size()) throw DimensionError("span map: assignment does not cover the domain");
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (f_[i] >= cod_->size()) {
        throw ValidationError("span map: '" + dom_->name(i) + "' is sent outside the codomain");
      }
      if (cod_->src(f_[i]) != dom_->src(i) || cod_->tgt(f_[i]) != dom_->tgt(i)) {
        throw ValidationError("span map: '" + dom_->name(i) + "' -> '" + cod_->name(f_[i]) +
                              "' does not preserve source and target");
      }
    }
  }

  static SpanMap identity(const SpanPtr& M) {
    std::vector<std::size_t> a(M->size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
    return {M, M, std::move(a)};
  }

  const Span& domain() const noexcept { return *dom_; }
  const Span& codomain() const noexcept { return *cod_; }
  const SpanPtr& domain_ptr() const noexcept { return dom_; }
  const SpanPtr& codomain_ptr() const noexcept { return cod_; }
  std::size_t operator()(std::size_t i) const { return f_.at(i); }
  const std::vector<std::size_t>& assignment() const noexcept { return f_; }

  // Two distinct domain elements with the same image.
  std::optional<std::pair<std::size_t, std::size_t>> collision() const {
    std::vector<std::size_t> seen(cod_->size(), npos);
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (seen[f_[i]] != npos) return std::make_pair(seen[f_[i]], i);
      seen[f_[i]] = i;
    }
    return std::nullopt;
  }
  // A codomain element outside the image.
  std::optional<std::size_t> missed() const {
    std::vector<bool> hit(cod_->size(), false);
    for (auto y : f_) hit[y] = true;
    for (std::size_t y = 0; y < hit.size(); ++y)
      if (!hit[y]) return y;
    return std::nullopt;
  }
  bool is_injective() const { return !collision(); }
  bool is_surjective() const { return !missed(); }
  bool is_bijective() const { return is_injective() && is_surjective(); }

  SpanMap inverse() const {
    if (auto c = collision()) {
      throw PreconditionError("span map not injective: '" + dom_->name(c->first) + "' and '" + dom_->name(c->second) +
                              "' share an image");
    }
    if (auto m = missed()) throw PreconditionError("span map not surjective: '" + cod_->name(*m) + "' is missed");
    std::vector<std::size_t> g(cod_->size());
    for (std::size_t i = 0; i < f_.size(); ++i) g[f_[i]] = i;
    return {cod_, dom_, std::move(g)};
  }

 private:
  SpanPtr dom_;
  SpanPtr cod_;
  std::vector<std::size_t> f_;
};

// g after f.
inline SpanMap compose(const SpanMap& g, const SpanMap& f) {
  if (!same_span(f.codomain_ptr(), g.domain_ptr())) throw DimensionError("compose: codomain and domain differ");
  std::vector<std::size_t> h(f.domain().size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = g(f(i));
  return {f.domain_ptr(), g.codomain_ptr(), std::move(h)};
}

inline SpanMap operator*(const SpanMap& g, const SpanMap& f) { return compose(g, f); }

// First domain element where two parallel maps differ.
inline std::optional<std::size_t> first_disagreement(const SpanMap& f, const SpanMap& g) {
  if (!same_span(f.domain_ptr(), g.domain_ptr()) || !same_span(f.codomain_ptr(), g.codomain_ptr())) {
    throw DimensionError("maps are not parallel");
  }
  for (std::size_t i = 0; i < f.domain().size(); ++i)
    if (f(i) != g(i)) return i;
  return std::nullopt;
}

// A product span together with its projection data.
struct SpanProduct {
  SpanPtr span;
  SpanPtr left;
  SpanPtr right;
  std::vector<std::pair<std::size_t, std::size_t>> components;
  std::vector<std::size_t> lookup;  // left index * |right| + right index -> element or npos

  std::optional<std::size_t> find(std::size_t l, std::size_t r) const {
    std::size_t v = lookup[l * right->size() + r];
    if (v == npos) return std::nullopt;
    return v;
  }
  std::size_t at(std::size_t l, std::size_t r) const {
    std::size_t v = lookup.at(l * right->size() + r);
    if (v == npos) {
      throw ValidationError("no element (" + left->name(l) + "," + right->name(r) + ") in product span");
    }
    return v;
  }
};

// While alive, circ and bullet on the current thread return the same
// product for the same pair of span pointers.
class ProductMemo {
 public:
  ProductMemo() : previous_(current()) { current() = this; }
  ~ProductMemo() { current() = previous_; }
  ProductMemo(const ProductMemo&) = delete;
  ProductMemo& operator=(const ProductMemo&) = delete;

  static ProductMemo*& current() {
    thread_local ProductMemo* memo = nullptr;
    return memo;
  }

  template <typename Build>
  SpanProduct get(ProductKind kind, const SpanPtr& M, const SpanPtr& N, Build&& build) {
    auto key = std::make_tuple(kind, M.get(), N.get());
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    SpanProduct p = build();
    table_.emplace(key, p);
    return p;
  }

 private:
  ProductMemo* previous_;
  std::map<std::tuple<ProductKind, const Span*, const Span*>, SpanProduct> table_;
};

namespace detail {
template <typename Keep, typename Src, typename Tgt>
SpanProduct build_product(ProductKind kind, const SpanPtr& M, const SpanPtr& N, Keep keep, Src src, Tgt tgt) {
  require_same_objects(*M, *N);
  SpanProduct p{nullptr, M, N, {}, std::vector<std::size_t>(M->size() * N->size(), npos)};
  std::vector<std::size_t> s, t;
  for (std::size_t m = 0; m < M->size(); ++m) {
    for (std::size_t n = 0; n < N->size(); ++n) {
      if (!keep(m, n)) continue;
      p.lookup[m * N->size() + n] = p.components.size();
      p.components.emplace_back(m, n);
      s.push_back(src(m, n));
      t.push_back(tgt(m, n));
    }
  }
  p.span = Span::make(M->objects(), ProductOrigin{kind, M, N, p.components}, std::move(s), std::move(t));
  return p;
}

template <typename Keep, typename Src, typename Tgt>
SpanProduct make_product(ProductKind kind, const SpanPtr& M, const SpanPtr& N, Keep keep, Src src, Tgt tgt) {
  auto build = [&] { return build_product(kind, M, N, keep, src, tgt); };
  if (ProductMemo* memo = ProductMemo::current()) return memo->get(kind, M, N, build);
  return build();
}
}  // namespace detail

// M∘N = {(m,n) | s(m) = t(n)}, src = s(n), tgt = t(m).
inline SpanProduct circ(const SpanPtr& M, const SpanPtr& N) {
  return detail::make_product(
      ProductKind::circ, M, N, [&](std::size_t m, std::size_t n) { return M->src(m) == N->tgt(n); },
      [&](std::size_t, std::size_t n) { return N->src(n); }, [&](std::size_t m, std::size_t) { return M->tgt(m); });
}

// M•N = {(m,n) | s(m) = s(n), t(m) = t(n)}.
inline SpanProduct bullet(const SpanPtr& M, const SpanPtr& N) {
  return detail::make_product(
      ProductKind::bullet, M, N,
      [&](std::size_t m, std::size_t n) { return M->src(m) == N->src(n) && M->tgt(m) == N->tgt(n); },
      [&](std::size_t m, std::size_t) { return M->src(m); }, [&](std::size_t m, std::size_t) { return M->tgt(m); });
}

inline SpanPtr circ_product(const SpanPtr& M, const SpanPtr& N) { return circ(M, N).span; }
inline SpanPtr bullet_product(const SpanPtr& M, const SpanPtr& N) { return bullet(M, N).span; }

namespace detail {
template <typename Product>
SpanMap product_map(const SpanMap& f, const SpanMap& g, Product product) {
  SpanProduct d = product(f.domain_ptr(), g.domain_ptr());
  SpanProduct c = product(f.codomain_ptr(), g.codomain_ptr());
  std::vector<std::size_t> a(d.components.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [m, n] = d.components[i];
    a[i] = c.at(f(m), g(n));
  }
  return {d.span, c.span, std::move(a)};
}
}  // namespace detail

inline SpanMap circ_map(const SpanMap& f, const SpanMap& g) { return detail::product_map(f, g, circ); }
inline SpanMap bullet_map(const SpanMap& f, const SpanMap& g) { return detail::product_map(f, g, bullet); }

inline SpanPtr unit_I(const ObjectSet& X) {
  std::vector<std::size_t> id(X.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  return Span::make(X, X.labels(), id, id);
}

// (x,y) has tgt x and src y; ordered by (x, y).
inline SpanPtr unit_J(const ObjectSet& X) {
  std::vector<std::string> names;
  std::vector<std::size_t> s, t;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < X.size(); ++y) {
      names.push_back(pair_label(X.label(x), X.label(y)));
      t.push_back(x);
      s.push_back(y);
    }
  return Span::make(X, std::move(names), std::move(s), std::move(t));
}

inline std::size_t j_index(const ObjectSet& X, std::size_t tgt, std::size_t src) { return tgt * X.size() + src; }

// δ: I → I•I, x ↦ (x,x).
inline SpanMap delta_I(const ObjectSet& X) {
  auto I = unit_I(X);
  SpanProduct II = bullet(I, I);
  std::vector<std::size_t> a(X.size());
  for (std::size_t x = 0; x < X.size(); ++x) a[x] = II.at(x, x);
  return {I, II.span, std::move(a)};
}

// ϖ: J∘J → J, ((x,y),(y,y')) ↦ (x,y').
inline SpanMap varpi_J(const ObjectSet& X) {
  auto J = unit_J(X);
  SpanProduct JJ = circ(J, J);
  std::vector<std::size_t> a(JJ.components.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [u, v] = JJ.components[i];
    a[i] = j_index(X, J->tgt(u), J->src(v));
  }
  return {JJ.span, J, std::move(a)};
}

// τ: I → J, x ↦ (x,x).
inline SpanMap tau(const ObjectSet& X) {
  std::vector<std::size_t> a(X.size());
  for (std::size_t x = 0; x < X.size(); ++x) a[x] = j_index(X, x, x);
  return {unit_I(X), unit_J(X), std::move(a)};
}

// ζ: (M•N)∘(M'•N') → (M∘M')•(N∘N'), ((m,n),(m',n')) ↦ ((m,m'),(n,n')).
inline SpanMap interchange(const SpanPtr& M, const SpanPtr& N, const SpanPtr& M2, const SpanPtr& N2) {
  SpanProduct MN = bullet(M, N), MN2 = bullet(M2, N2);
  SpanProduct dom = circ(MN.span, MN2.span);
  SpanProduct MM = circ(M, M2), NN = circ(N, N2);
  SpanProduct cod = bullet(MM.span, NN.span);
  std::vector<std::size_t> a(dom.components.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [u, v] = dom.components[i];
    auto [m, n] = MN.components[u];
    auto [m2, n2] = MN2.components[v];
    a[i] = cod.at(MM.at(m, m2), NN.at(n, n2));
  }
  return {dom.span, cod.span, std::move(a)};
}

namespace detail {
template <typename P>
SpanMap associator(const SpanPtr& A, const SpanPtr& B, const SpanPtr& C, P product) {
  SpanProduct AB = product(A, B), dom = product(AB.span, C);
  SpanProduct BC = product(B, C), cod = product(A, BC.span);
  std::vector<std::size_t> f(dom.components.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto [ab, c] = dom.components[i];
    auto [a, b] = AB.components[ab];
    f[i] = cod.at(a, BC.at(b, c));
  }
  return {dom.span, cod.span, std::move(f)};
}
}  // namespace detail

// (A∘B)∘C → A∘(B∘C)
inline SpanMap circ_associator(const SpanPtr& A, const SpanPtr& B, const SpanPtr& C) {
  return detail::associator(A, B, C, circ);
}
// (A•B)•C → A•(B•C)
inline SpanMap bullet_associator(const SpanPtr& A, const SpanPtr& B, const SpanPtr& C) {
  return detail::associator(A, B, C, bullet);
}

// I∘M → M
inline SpanMap circ_left_unitor(const SpanPtr& M) {
  SpanProduct p = circ(unit_I(M->objects()), M);
  std::vector<std::size_t> f(p.components.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = p.components[i].second;
  return {p.span, M, std::move(f)};
}
// M∘I → M
inline SpanMap circ_right_unitor(const SpanPtr& M) {
  SpanProduct p = circ(M, unit_I(M->objects()));
  std::vector<std::size_t> f(p.components.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = p.components[i].first;
  return {p.span, M, std::move(f)};
}
// J•M → M
inline SpanMap bullet_left_unitor(const SpanPtr& M) {
  SpanProduct p = bullet(unit_J(M->objects()), M);
  std::vector<std::size_t> f(p.components.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = p.components[i].second;
  return {p.span, M, std::move(f)};
}
// M•J → M
inline SpanMap bullet_right_unitor(const SpanPtr& M) {
  SpanProduct p = bullet(M, unit_J(M->objects()));
  std::vector<std::size_t> f(p.components.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = p.components[i].first;
  return {p.span, M, std::move(f)};
}

}  // namespace duoidal
