#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "duoidal/small_category.hpp"
#include "duoidal/span_hopf.hpp"

namespace duoidal::catalog {

// One-object category from a multiplication table over `names`;
// table[i][j] = index of names[i] . names[j].
inline SmallCategory monoid(const std::vector<std::string>& names, const std::vector<std::vector<std::size_t>>& table,
                            std::size_t unit = 0) {
  ObjectSet X({"*"});
  std::vector<std::size_t> zero(names.size(), 0);
  SpanPtr A = Span::make(X, names, zero, zero);
  std::vector<std::size_t> comp;
  for (auto const& row : table) comp.insert(comp.end(), row.begin(), row.end());
  return {A, {unit}, std::move(comp)};
}

inline SmallCategory cyclic_group(std::size_t n) {
  std::vector<std::string> names{"1"};
  for (std::size_t i = 1; i < n; ++i) names.push_back(i == 1 ? "g" : "g" + std::to_string(i));
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return monoid(names, t);
}

// {1, m} with m.m = m.
inline SmallCategory idempotent_monoid() { return monoid({"1", "m"}, {{0, 1}, {1, 1}}); }

inline SmallCategory symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (auto const& q : perms) {
    std::string s;
    for (int v : q) s += static_cast<char>('0' + v);
    names.push_back(s == "012" ? "1" : "p" + s);
  }
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
      t[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return monoid(names, t);
}

// x --a--> y
inline SmallCategory walking_arrow() {
  ObjectSet X({"x", "y"});
  return SmallCategory::from_names(X, {{"1_x", "x", "x"}, {"1_y", "y", "y"}, {"a", "x", "y"}},
                                   {{"x", "1_x"}, {"y", "1_y"}},
                                   {{"1_x", "1_x", "1_x"}, {"1_y", "1_y", "1_y"}, {"a", "1_x", "a"}, {"1_y", "a", "a"}});
}

inline ObjectSet numbered_objects(std::size_t k) {
  static const std::vector<std::string> base{"x", "y", "z", "w"};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back(i < base.size() ? base[i] : "o" + std::to_string(i));
  return ObjectSet(labels);
}

// Exactly one arrow between any ordered pair of objects.
inline SmallCategory indiscrete(std::size_t k) {
  ObjectSet X = numbered_objects(k);
  std::vector<std::string> names;
  std::vector<std::size_t> s, t;
  for (std::size_t to = 0; to < k; ++to)
    for (std::size_t from = 0; from < k; ++from) {
      names.push_back(from == to ? "1_" + X.label(from) : X.label(from) + ">" + X.label(to));
      s.push_back(from);
      t.push_back(to);
    }
  std::size_t n = k * k;
  std::vector<std::size_t> id(k), comp(n * n, npos);
  for (std::size_t x = 0; x < k; ++x) id[x] = x * k + x;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (s[a] == t[b]) comp[a * n + b] = t[a] * k + s[b];
  return {Span::make(X, std::move(names), std::move(s), std::move(t)), std::move(id), std::move(comp)};
}

inline SmallCategory discrete_on(const ObjectSet& X) {
  std::size_t k = X.size();
  std::vector<std::string> names;
  std::vector<std::size_t> ob(k);
  std::iota(ob.begin(), ob.end(), std::size_t{0});
  for (std::size_t x = 0; x < k; ++x) names.push_back("1_" + X.label(x));
  std::vector<std::size_t> comp(k * k, npos);
  for (std::size_t x = 0; x < k; ++x) comp[x * k + x] = x;
  return {Span::make(X, std::move(names), ob, ob), ob, std::move(comp)};
}

inline SmallCategory discrete(std::size_t k) { return discrete_on(numbered_objects(k)); }

// A × H for a one-object H, over the objects of A; arrows (a,h).
inline SmallCategory product_with_monoid(const SmallCategory& A, const SmallCategory& H) {
  if (H.objects().size() != 1) throw PreconditionError("product: second factor must have one object");
  std::size_t n = A.size() * H.size();
  std::vector<std::string> names;
  std::vector<std::size_t> s, t;
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t h = 0; h < H.size(); ++h) {
      names.push_back(pair_label(A.name(a), H.name(h)));
      s.push_back(A.src(a));
      t.push_back(A.tgt(a));
    }
  std::vector<std::size_t> id(A.objects().size());
  for (std::size_t x = 0; x < id.size(); ++x) id[x] = A.identity(x) * H.size() + H.identity(0);
  std::vector<std::size_t> comp(n * n, npos);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto ab = A.compose(i / H.size(), j / H.size());
      if (ab) comp[i * n + j] = *ab * H.size() + H(i % H.size(), j % H.size());
    }
  return {Span::make(A.objects(), std::move(names), std::move(s), std::move(t)), std::move(id), std::move(comp)};
}

// A × H graded over A by the first projection.
inline ComoduleMonoidSpan projection_comodule(const SmallCategory& A, const SmallCategory& H) {
  SmallCategory B = product_with_monoid(A, H);
  std::vector<std::size_t> c(B.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = i / H.size();
  return {std::move(B), A, std::move(c)};
}

// B graded over the discrete category on its objects: every arrow goes to
// the identity of its source. Requires every arrow of B to be a loop.
inline ComoduleMonoidSpan trivial_grade(const SmallCategory& B) {
  std::vector<std::size_t> c(B.size());
  for (std::size_t b = 0; b < B.size(); ++b) {
    if (B.src(b) != B.tgt(b)) throw PreconditionError("trivial grade: arrow '" + B.name(b) + "' is not a loop");
    c[b] = B.src(b);
  }
  return {B, discrete_on(B.objects()), std::move(c)};
}

namespace detail {

struct Shape {
  std::size_t objects;
  std::vector<std::size_t> src, tgt;  // non-identity arrows
};

inline std::vector<std::size_t> encode(const Shape& sh, const std::vector<std::size_t>& table,
                                       const std::vector<std::size_t>& obj_perm,
                                       const std::vector<std::size_t>& arr_perm) {
  std::size_t n0 = sh.objects, k = sh.src.size(), n = n0 + k;
  auto relabel = [&](std::size_t a) { return a < n0 ? obj_perm[a] : n0 + arr_perm[a - n0]; };
  std::vector<std::size_t> inv(n);
  for (std::size_t a = 0; a < n; ++a) inv[relabel(a)] = a;
  std::vector<std::size_t> code;
  for (std::size_t j = n0; j < n; ++j) {
    std::size_t a = inv[j] - n0;
    code.push_back(obj_perm[sh.src[a]]);
    code.push_back(obj_perm[sh.tgt[a]]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t v = table[inv[i] * n + inv[j]];
      code.push_back(v == npos ? n : relabel(v));
    }
  return code;
}

inline std::vector<std::size_t> canonical(const Shape& sh, const std::vector<std::size_t>& table) {
  std::vector<std::size_t> op(sh.objects), ap(sh.src.size());
  std::iota(op.begin(), op.end(), std::size_t{0});
  std::vector<std::size_t> best;
  do {
    std::iota(ap.begin(), ap.end(), std::size_t{0});
    do {
      auto c = encode(sh, table, op, ap);
      if (best.empty() || c < best) best = std::move(c);
    } while (std::next_permutation(ap.begin(), ap.end()));
  } while (std::next_permutation(op.begin(), op.end()));
  return best;
}

}  // namespace detail

// Every category with at most `max_objects` objects and at most
// `max_arrows` arrows (identities included), one per isomorphism class.
inline std::vector<SmallCategory> enumerate_small_categories(std::size_t max_objects, std::size_t max_arrows) {
  std::vector<SmallCategory> out;
  std::set<std::vector<std::size_t>> seen;
  static const std::vector<std::string> arrow_names{"f", "g", "h", "k", "l", "m"};
  for (std::size_t n0 = 1; n0 <= max_objects; ++n0) {
    if (n0 > max_arrows) break;
    ObjectSet X = numbered_objects(n0);
    for (std::size_t k = 0; n0 + k <= max_arrows; ++k) {
      std::size_t n = n0 + k;
      std::size_t shapes = 1;
      for (std::size_t i = 0; i < 2 * k; ++i) shapes *= n0;
      for (std::size_t code = 0; code < shapes; ++code) {
        detail::Shape sh{n0, std::vector<std::size_t>(k), std::vector<std::size_t>(k)};
        std::size_t c = code;
        for (std::size_t i = 0; i < k; ++i) {
          sh.src[i] = c % n0;
          c /= n0;
          sh.tgt[i] = c % n0;
          c /= n0;
        }
        std::vector<std::size_t> src(n), tgt(n);
        for (std::size_t x = 0; x < n0; ++x) src[x] = tgt[x] = x;
        for (std::size_t i = 0; i < k; ++i) {
          src[n0 + i] = sh.src[i];
          tgt[n0 + i] = sh.tgt[i];
        }
        std::vector<std::size_t> table(n * n, npos);
        std::vector<std::pair<std::size_t, std::size_t>> open;
        std::vector<std::vector<std::size_t>> options;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            if (src[a] != tgt[b]) continue;
            if (a < n0) {
              table[a * n + b] = b;
            } else if (b < n0) {
              table[a * n + b] = a;
            } else {
              open.emplace_back(a, b);
              std::vector<std::size_t> opt;
              for (std::size_t v = 0; v < n; ++v)
                if (src[v] == src[b] && tgt[v] == tgt[a]) opt.push_back(v);
              options.push_back(std::move(opt));
            }
          }
        if (std::any_of(options.begin(), options.end(), [](auto const& o) { return o.empty(); })) continue;
        std::vector<std::string> names;
        for (std::size_t x = 0; x < n0; ++x) names.push_back("1_" + X.label(x));
        for (std::size_t i = 0; i < k; ++i) names.push_back(arrow_names[i]);
        SpanPtr A = Span::make(X, names, src, tgt);
        std::vector<std::size_t> id(n0);
        std::iota(id.begin(), id.end(), std::size_t{0});
        auto assoc_ok = [&](std::size_t upto) {
          for (std::size_t idx = 0; idx <= upto; ++idx) {
            auto [a, b] = open[idx];
            std::size_t ab = table[a * n + b];
            for (std::size_t cc = 0; cc < n; ++cc) {
              if (src[b] != tgt[cc]) continue;
              std::size_t bc = table[b * n + cc];
              if (bc == npos) continue;
              std::size_t l = table[ab * n + cc], r = table[a * n + bc];
              if (l != npos && r != npos && l != r) return false;
            }
            for (std::size_t z = 0; z < n; ++z) {
              if (src[z] != tgt[a]) continue;
              std::size_t za = table[z * n + a];
              if (za == npos) continue;
              std::size_t l = table[za * n + b], r = table[z * n + ab];
              if (l != npos && r != npos && l != r) return false;
            }
          }
          return true;
        };
        auto go = [&](auto&& self, std::size_t i) -> void {
          if (i == open.size()) {
            SmallCategory C(A, id, table, false);
            if (!C.check_laws().all_passed()) return;
            if (seen.insert(detail::canonical(sh, table)).second) out.push_back(std::move(C));
            return;
          }
          auto [a, b] = open[i];
          for (auto v : options[i]) {
            table[a * n + b] = v;
            if (assoc_ok(i)) self(self, i + 1);
          }
          table[a * n + b] = npos;
        };
        go(go, 0);
      }
    }
  }
  return out;
}

struct NamedCategory {
  std::string name;
  SmallCategory category;
};

// The standing test corpus: every category with ≤ 2 objects and ≤ 4 arrows
// followed by the named examples.
inline std::vector<NamedCategory> standard_corpus() {
  std::vector<NamedCategory> out;
  std::size_t i = 0;
  for (auto& C : enumerate_small_categories(2, 4)) out.push_back({"enum#" + std::to_string(i++), std::move(C)});
  out.push_back({"C2", cyclic_group(2)});
  out.push_back({"C3", cyclic_group(3)});
  out.push_back({"walking arrow", walking_arrow()});
  out.push_back({"{1,m}", idempotent_monoid()});
  out.push_back({"indiscrete(2)", indiscrete(2)});
  out.push_back({"indiscrete(3)", indiscrete(3)});
  out.push_back({"S3", symmetric_group_3()});
  out.push_back({"discrete(3)", discrete(3)});
  out.push_back({"C2xC2", product_with_monoid(cyclic_group(2), cyclic_group(2))});
  return out;
}

}  // namespace duoidal::catalog
