#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "duoidal/report.hpp"
#include "duoidal/small_category.hpp"
#include "duoidal/span_hopf.hpp"

namespace duoidal::random {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline SpanPtr random_span(const ObjectSet& X, std::size_t max_size, Rng& rng, const std::string& prefix = "m") {
  std::size_t n = X.empty() ? 0 : uniform(rng, 0, max_size);
  std::vector<std::string> names;
  std::vector<std::size_t> s, t;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(prefix + std::to_string(i));
    s.push_back(uniform(rng, 0, X.size() - 1));
    t.push_back(uniform(rng, 0, X.size() - 1));
  }
  return Span::make(X, std::move(names), std::move(s), std::move(t));
}

inline ObjectSet random_objects(std::size_t max_objects, Rng& rng) {
  std::size_t k = uniform(rng, 1, max_objects);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back("o" + std::to_string(i));
  return ObjectSet(labels);
}

inline SliceObject random_slice(const ObjectSet& X, std::size_t min_size, std::size_t max_size, Rng& rng) {
  std::size_t n = X.empty() ? 0 : uniform(rng, min_size, max_size);
  std::vector<std::string> names;
  std::vector<std::size_t> anchor;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("z" + std::to_string(i));
    anchor.push_back(uniform(rng, 0, X.size() - 1));
  }
  return {X, std::move(names), anchor};
}

struct ModuleQuotient {
  SpanModule module;
  std::vector<std::size_t> class_of;
};

// Smallest congruence containing the seed pairs; seeds must be parallel.
inline ModuleQuotient quotient_module(const SmallCategory& A, const SpanModule& Q,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& seeds) {
  const Span& S = Q.carrier();
  UnionFind uf(S.size());
  for (auto [x, y] : seeds) {
    if (S.src(x) != S.src(y) || S.tgt(x) != S.tgt(y)) throw PreconditionError("quotient: seed pair not parallel");
    uf.unite(x, y);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < S.size(); ++q) {
      std::size_t r = uf.find(q);
      if (r == q) continue;
      for (std::size_t a = 0; a < A.size(); ++a) {
        auto qa = Q.act(q, a);
        if (qa && uf.unite(*qa, Q(r, a))) changed = true;
      }
    }
  }
  std::size_t n = 0;
  std::vector<std::size_t> cls = uf.classes(&n);
  std::vector<std::size_t> rep(n, npos);
  for (std::size_t i = 0; i < S.size(); ++i)
    if (rep[cls[i]] == npos) rep[cls[i]] = i;
  std::vector<std::string> names;
  std::vector<std::size_t> s, t;
  for (auto r : rep) {
    names.push_back(S.name(r));
    s.push_back(S.src(r));
    t.push_back(S.tgt(r));
  }
  SpanPtr C = Span::make(S.objects(), std::move(names), std::move(s), std::move(t));
  std::vector<std::size_t> act(n * A.size(), npos);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < A.size(); ++a)
      if (auto v = Q.act(rep[k], a)) act[k * A.size() + a] = cls[*v];
  return {SpanModule(A, C, std::move(act)), std::move(cls)};
}

// Free module M∘A on a span M.
inline SpanModule free_module(const SmallCategory& A, const SpanPtr& M) {
  SpanProduct MA = circ(M, A.arrows_ptr());
  std::vector<std::size_t> act(MA.components.size() * A.size(), npos);
  for (std::size_t i = 0; i < MA.components.size(); ++i) {
    auto [m, a] = MA.components[i];
    for (std::size_t b = 0; b < A.size(); ++b)
      if (auto ab = A.compose(a, b)) act[i * A.size() + b] = MA.at(m, *ab);
  }
  return {A, MA.span, std::move(act)};
}

namespace detail {
template <typename Accept>
std::optional<std::pair<std::size_t, std::size_t>> random_pair(const Span& S, Rng& rng, Accept&& accept) {
  std::vector<std::pair<std::size_t, std::size_t>> cand;
  for (std::size_t x = 0; x < S.size(); ++x)
    for (std::size_t y = x + 1; y < S.size(); ++y)
      if (S.src(x) == S.src(y) && S.tgt(x) == S.tgt(y) && accept(x, y)) cand.emplace_back(x, y);
  if (cand.empty()) return std::nullopt;
  return cand[uniform(rng, 0, cand.size() - 1)];
}
}  // namespace detail

// A module: free on a random span, then possibly quotiented by a random
// congruence.
inline SpanModule random_module(const SmallCategory& A, std::size_t max_generators, Rng& rng) {
  SpanModule F = free_module(A, random_span(A.objects(), max_generators, rng, "e"));
  if (uniform(rng, 0, 1) == 0) return F;
  auto seed = detail::random_pair(F.carrier(), rng, [](std::size_t, std::size_t) { return true; });
  if (!seed) return F;
  return quotient_module(A, F, {*seed}).module;
}

// A Hopf module: K(Z) for a random slice, then possibly quotiented by a
// congruence generated by a pair of equal grade.
inline HopfModuleSpan random_hopf_module(const SmallCategory& A, std::size_t max_slice, Rng& rng) {
  SliceObject Z = random_slice(A.objects(), 1, max_slice, rng);
  HopfModuleSpan K = comparison_K(A, Z);
  if (uniform(rng, 0, 1) == 0) return K;
  auto seed = detail::random_pair(K.carrier(), rng,
                                  [&](std::size_t x, std::size_t y) { return K.grade(x) == K.grade(y); });
  if (!seed) return K;
  ModuleQuotient q = quotient_module(A, K.module(), {*seed});
  std::vector<std::size_t> grade(q.module.size(), npos);
  for (std::size_t i = 0; i < q.class_of.size(); ++i) grade[q.class_of[i]] = K.grade(i);
  return {A, std::move(q.module), std::move(grade)};
}

}  // namespace duoidal::random
