#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "duoidal/report.hpp"
#include "duoidal/span.hpp"

namespace duoidal {

using InterchangeFn = std::function<SpanMap(const SpanPtr&, const SpanPtr&, const SpanPtr&, const SpanPtr&)>;

struct SpanAxiomOptions {
  // Replacement for ζ; lets tests inject a broken interchange.
  InterchangeFn interchange = [](const SpanPtr& a, const SpanPtr& b, const SpanPtr& c, const SpanPtr& d) {
    return duoidal::interchange(a, b, c, d);
  };
  // Six-argument diagrams are instantiated at every assignment when there
  // are at most this many spans, and at cyclic windows otherwise.
  std::size_t exhaustive_limit = 3;
};

namespace detail {

inline std::optional<std::string> compare_paths(const SpanMap& lhs, const SpanMap& rhs) {
  if (!same_span(lhs.domain_ptr(), rhs.domain_ptr()) || !same_span(lhs.codomain_ptr(), rhs.codomain_ptr())) {
    return std::string("paths have different endpoints");
  }
  if (auto i = first_disagreement(lhs, rhs)) {
    return "at " + lhs.domain().name(*i) + ": " + lhs.codomain().name(lhs(*i)) + " vs " + rhs.codomain().name(rhs(*i));
  }
  return std::nullopt;
}

template <typename Fn>
std::optional<std::string> guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return std::string("invalid map: ") + e.what();
  }
}

struct SpanDiagrams {
  const ObjectSet& X;
  const InterchangeFn& Z;
  SpanPtr I = unit_I(X);
  SpanPtr J = unit_J(X);

  static SpanMap id(const SpanPtr& M) { return SpanMap::identity(M); }

  std::optional<std::string> circ_hexagon(const std::array<SpanPtr, 6>& v) const {
    auto const& [A, B, C, D, E, F] = v;
    SpanPtr EF = bullet_product(E, F);
    SpanPtr AC = circ_product(A, C), BD = circ_product(B, D);
    SpanPtr CE = circ_product(C, E), DF = circ_product(D, F);
    SpanMap lhs = bullet_map(circ_associator(A, C, E), circ_associator(B, D, F)) * Z(AC, BD, E, F) *
                  circ_map(Z(A, B, C, D), id(EF));
    SpanPtr AB = bullet_product(A, B), CD = bullet_product(C, D);
    SpanMap rhs = Z(A, B, CE, DF) * circ_map(id(AB), Z(C, D, E, F)) * circ_associator(AB, CD, EF);
    return compare_paths(lhs, rhs);
  }

  std::optional<std::string> bullet_hexagon(const std::array<SpanPtr, 6>& v) const {
    auto const& [A, B, C, D, E, F] = v;
    SpanPtr AB = bullet_product(A, B), DE = bullet_product(D, E);
    SpanPtr AD = circ_product(A, D), BE = circ_product(B, E), CF = circ_product(C, F);
    SpanMap lhs = bullet_associator(AD, BE, CF) * bullet_map(Z(A, B, D, E), id(CF)) * Z(AB, C, DE, F);
    SpanPtr BC = bullet_product(B, C), EF = bullet_product(E, F);
    SpanMap rhs = bullet_map(id(AD), Z(B, C, E, F)) * Z(A, BC, D, EF) *
                  circ_map(bullet_associator(A, B, C), bullet_associator(D, E, F));
    return compare_paths(lhs, rhs);
  }

  std::optional<std::string> unit_I_left(const SpanPtr& A, const SpanPtr& B) const {
    SpanPtr AB = bullet_product(A, B);
    SpanMap lhs = bullet_map(circ_left_unitor(A), circ_left_unitor(B)) * Z(I, I, A, B) * circ_map(delta_I(X), id(AB));
    return compare_paths(lhs, circ_left_unitor(AB));
  }

  std::optional<std::string> unit_I_right(const SpanPtr& A, const SpanPtr& B) const {
    SpanPtr AB = bullet_product(A, B);
    SpanMap lhs = bullet_map(circ_right_unitor(A), circ_right_unitor(B)) * Z(A, B, I, I) * circ_map(id(AB), delta_I(X));
    return compare_paths(lhs, circ_right_unitor(AB));
  }

  std::optional<std::string> unit_J_left(const SpanPtr& A, const SpanPtr& B) const {
    SpanPtr AB = circ_product(A, B);
    SpanMap lhs = bullet_left_unitor(AB) * bullet_map(varpi_J(X), id(AB)) * Z(J, A, J, B);
    return compare_paths(lhs, circ_map(bullet_left_unitor(A), bullet_left_unitor(B)));
  }

  std::optional<std::string> unit_J_right(const SpanPtr& A, const SpanPtr& B) const {
    SpanPtr AB = circ_product(A, B);
    SpanMap lhs = bullet_right_unitor(AB) * bullet_map(id(AB), varpi_J(X)) * Z(A, J, B, J);
    return compare_paths(lhs, circ_map(bullet_right_unitor(A), bullet_right_unitor(B)));
  }

  // (A•I)∘(B•J) → A∘B both ways.
  std::optional<std::string> mixed_unit(const SpanPtr& A, const SpanPtr& B) const {
    SpanPtr AB = circ_product(A, B);
    SpanPtr AI = bullet_product(A, I);
    SpanMap lhs = bullet_right_unitor(AB) * bullet_map(id(AB), circ_left_unitor(J)) * Z(A, I, B, J);
    SpanMap rhs = circ_map(bullet_right_unitor(A), id(B)) * circ_map(bullet_map(id(A), tau(X)), id(B)) *
                  circ_map(id(AI), bullet_right_unitor(B));
    return compare_paths(lhs, rhs);
  }

  std::optional<std::string> j_associative() const {
    SpanMap w = varpi_J(X);
    return compare_paths(w * circ_map(w, id(J)), w * circ_map(id(J), w) * circ_associator(J, J, J));
  }
  std::optional<std::string> j_left_unit() const {
    return compare_paths(varpi_J(X) * circ_map(tau(X), id(J)), circ_left_unitor(J));
  }
  std::optional<std::string> j_right_unit() const {
    return compare_paths(varpi_J(X) * circ_map(id(J), tau(X)), circ_right_unitor(J));
  }
  std::optional<std::string> i_coassociative() const {
    SpanMap d = delta_I(X);
    return compare_paths(bullet_associator(I, I, I) * bullet_map(d, id(I)) * d, bullet_map(id(I), d) * d);
  }
  std::optional<std::string> i_left_counit() const {
    return compare_paths(bullet_left_unitor(I) * bullet_map(tau(X), id(I)) * delta_I(X), id(I));
  }
  std::optional<std::string> i_right_counit() const {
    return compare_paths(bullet_right_unitor(I) * bullet_map(id(I), tau(X)) * delta_I(X), id(I));
  }
};

}  // namespace detail

// Evaluates the duoidal axiom diagrams of span(X) pointwise, with the
// variables ranging over the supplied spans.
inline Report check_duoidal_axioms(const ObjectSet& X, const std::vector<SpanPtr>& spans,
                                   const SpanAxiomOptions& options = {}) {
  for (auto const& s : spans) {
    if (!(s->objects() == X)) throw ValidationError("check_duoidal_axioms: span over a different object set");
  }
  ProductMemo memo;
  detail::SpanDiagrams d{X, options.interchange};
  Report report;

  auto single = [&](const std::string& name, auto fn) {
    auto w = detail::guarded(fn);
    report.record(name, !w, w.value_or(""));
  };
  single("J monoid associativity", [&] { return d.j_associative(); });
  single("J monoid left unit", [&] { return d.j_left_unit(); });
  single("J monoid right unit", [&] { return d.j_right_unit(); });
  single("I comonoid coassociativity", [&] { return d.i_coassociative(); });
  single("I comonoid left counit", [&] { return d.i_left_counit(); });
  single("I comonoid right counit", [&] { return d.i_right_counit(); });

  std::size_t const k = spans.size();
  using Binary = std::optional<std::string> (detail::SpanDiagrams::*)(const SpanPtr&, const SpanPtr&) const;
  std::vector<std::pair<std::string, Binary>> binary{
      {"unitality I∘(A•B)", &detail::SpanDiagrams::unit_I_left},
      {"unitality (A•B)∘I", &detail::SpanDiagrams::unit_I_right},
      {"unitality (J•A)∘(J•B)", &detail::SpanDiagrams::unit_J_left},
      {"unitality (A•J)∘(B•J)", &detail::SpanDiagrams::unit_J_right},
      {"unit compatibility (A•I)∘(B•J)", &detail::SpanDiagrams::mixed_unit},
  };
  for (auto const& [name, fn] : binary) {
    report.record(name, true);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        auto w = detail::guarded([&] { return (d.*fn)(spans[a], spans[b]); });
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
  using Senary = std::optional<std::string> (detail::SpanDiagrams::*)(const std::array<SpanPtr, 6>&) const;
  std::vector<std::pair<std::string, Senary>> senary{
      {"associativity hexagon for ∘", &detail::SpanDiagrams::circ_hexagon},
      {"associativity hexagon for •", &detail::SpanDiagrams::bullet_hexagon},
  };
  for (auto const& [name, fn] : senary) {
    report.record(name, true);
    for (auto const& idx : tuples) {
      std::array<SpanPtr, 6> v;
      for (std::size_t j = 0; j < 6; ++j) v[j] = spans[idx[j]];
      auto w = detail::guarded([&] { return (d.*fn)(v); });
      if (w) report.record(name, false, detail::assignment_label(idx) + " " + *w);
    }
  }
  return report;
}

}  // namespace duoidal
