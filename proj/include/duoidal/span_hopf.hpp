#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duoidal/report.hpp"
#include "duoidal/small_category.hpp"
#include "duoidal/span.hpp"

namespace duoidal {

struct FiniteMapReport {
  SpanMap map;
  std::optional<std::pair<std::size_t, std::size_t>> collision;
  std::optional<std::size_t> missed;

  explicit FiniteMapReport(SpanMap m) : map(std::move(m)), collision(map.collision()), missed(map.missed()) {}

  bool injective() const noexcept { return !collision; }
  bool surjective() const noexcept { return !missed; }
  bool bijective() const noexcept { return injective() && surjective(); }

  std::string describe_failure() const {
    if (collision) {
      return map.domain().name(collision->first) + " and " + map.domain().name(collision->second) + " both map to " +
             map.codomain().name(map(collision->first));
    }
    if (missed) return map.codomain().name(*missed) + " has no preimage";
    return {};
  }
};

namespace detail {
inline SpanMap id(const SpanPtr& M) { return SpanMap::identity(M); }

inline std::optional<std::string> disagreement(const SpanMap& lhs, const SpanMap& rhs) {
  if (!same_span(lhs.domain_ptr(), rhs.domain_ptr()) || !same_span(lhs.codomain_ptr(), rhs.codomain_ptr())) {
    return std::string("paths have different endpoints");
  }
  if (auto i = first_disagreement(lhs, rhs)) {
    return "at " + lhs.domain().name(*i) + ": " + lhs.codomain().name(lhs(*i)) + " vs " + rhs.codomain().name(rhs(*i));
  }
  return std::nullopt;
}

template <typename Fn>
void record_diagram(Report& r, const std::string& name, Fn&& fn) {
  try {
    auto w = fn();
    r.record(name, !w, w.value_or(""));
  } catch (const Error& e) {
    r.record(name, false, std::string("invalid map: ") + e.what());
  }
}
}  // namespace detail

// Category laws plus the bimonoid compatibility squares for the diagonal
// comultiplication, evaluated as literal span-map composites.
inline Report check_bimonoid(const SmallCategory& A) {
  using detail::id;
  Report r = A.check_laws();
  if (!r.passed("identity endpoints") || !r.passed("composition domain") || !r.passed("composite endpoints")) {
    return r;
  }
  const ObjectSet& X = A.objects();
  SpanPtr const& P = A.arrows_ptr();
  SpanMap mu = A.mu(), eta = A.eta(), D = A.Delta(), e = A.epsilon();
  detail::record_diagram(r, "comultiplication is multiplicative", [&] {
    return detail::disagreement(D * mu, bullet_map(mu, mu) * interchange(P, P, P, P) * circ_map(D, D));
  });
  detail::record_diagram(r, "counit is multiplicative",
                         [&] { return detail::disagreement(e * mu, varpi_J(X) * circ_map(e, e)); });
  detail::record_diagram(r, "comultiplication is unital",
                         [&] { return detail::disagreement(D * eta, bullet_map(eta, eta) * delta_I(X)); });
  detail::record_diagram(r, "counit is unital", [&] { return detail::disagreement(e * eta, tau(X)); });
  detail::record_diagram(r, "comultiplication is coassociative", [&] {
    return detail::disagreement(bullet_associator(P, P, P) * bullet_map(D, id(P)) * D, bullet_map(id(P), D) * D);
  });
  detail::record_diagram(r, "counit laws", [&] {
    auto w = detail::disagreement(bullet_left_unitor(P) * bullet_map(e, id(P)) * D, id(P));
    return w ? w : detail::disagreement(bullet_right_unitor(P) * bullet_map(id(P), e) * D, id(P));
  });
  return r;
}

// Collision or miss of some β_Q, stated on raw indices so that it can be
// re-verified from the tables alone.
struct BetaCertificate {
  std::string source;
  SpanModule module;
  std::optional<std::array<std::size_t, 3>> collision;        // q1, q2, a with q1.a = q2.a
  std::optional<std::pair<std::size_t, std::size_t>> missed;  // (q', a) outside the image
};

// β_Q in its explicit span form (q,a) ↦ (q.a, a).
struct ExplicitBeta {
  FiniteMapReport report;
  std::vector<std::pair<std::size_t, std::size_t>> domain_pairs;
  std::vector<std::pair<std::size_t, std::size_t>> codomain_pairs;

  std::optional<BetaCertificate> certificate(const std::string& source, const SpanModule& Q) const {
    if (report.collision) {
      auto [i, j] = *report.collision;
      return BetaCertificate{source, Q,
                             std::array<std::size_t, 3>{domain_pairs[i].first, domain_pairs[j].first,
                                                        domain_pairs[i].second},
                             std::nullopt};
    }
    if (report.missed) return BetaCertificate{source, Q, std::nullopt, codomain_pairs[*report.missed]};
    return std::nullopt;
  }
};

inline ExplicitBeta beta_on_module(const SmallCategory& A, const SpanModule& Q) {
  if (Q.category_size() != A.size()) throw DimensionError("beta: module over a different category");
  const Span& S = Q.carrier();
  SpanProduct cod = bullet(Q.carrier_ptr(), A.arrows_ptr());
  std::vector<std::string> names;
  std::vector<std::size_t> s, t, f;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t q = 0; q < S.size(); ++q) {
    if (S.src(q) != S.tgt(q)) continue;
    for (std::size_t a = 0; a < A.size(); ++a) {
      if (A.tgt(a) != S.tgt(q)) continue;
      auto qa = Q.act(q, a);
      if (!qa) throw ValidationError("module action undefined at " + S.name(q) + "." + A.name(a));
      names.push_back(pair_label(S.name(q), A.name(a)));
      s.push_back(A.src(a));
      t.push_back(A.tgt(a));
      pairs.emplace_back(q, a);
      auto img = cod.find(*qa, a);
      if (!img) {
        throw ValidationError("module action breaks endpoints at " + S.name(q) + "." + A.name(a));
      }
      f.push_back(*img);
    }
  }
  SpanPtr dom = Span::make(S.objects(), std::move(names), std::move(s), std::move(t));
  return {FiniteMapReport(SpanMap(dom, cod.span, std::move(f))), std::move(pairs), cod.components};
}

// β_Q as the composite (Q•I)∘A → (Q•I)∘(A•A) → (Q∘A)•(I∘A) → (Q∘A)•A → Q•A.
inline SpanMap beta_literal(const SmallCategory& A, const SpanModule& Q) {
  using detail::id;
  SpanPtr const& P = A.arrows_ptr();
  SpanPtr I = unit_I(A.objects());
  SpanPtr QI = bullet_product(Q.carrier_ptr(), I);
  SpanPtr QA = circ_product(Q.carrier_ptr(), P);
  return bullet_map(Q.action_map(A), id(P)) * bullet_map(id(QA), circ_left_unitor(P)) *
         interchange(Q.carrier_ptr(), I, P, P) * circ_map(id(QI), A.Delta());
}

// (q,a) ↦ ((q, s(q)), a): from the explicit domain of β_Q to (Q•I)∘A.
inline SpanMap beta_relabeling(const SmallCategory& A, const SpanModule& Q, const ExplicitBeta& b) {
  SpanProduct QI = bullet(Q.carrier_ptr(), unit_I(A.objects()));
  SpanProduct dom = circ(QI.span, A.arrows_ptr());
  std::vector<std::size_t> f(b.domain_pairs.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto [q, a] = b.domain_pairs[i];
    f[i] = dom.at(QI.at(q, Q.carrier().src(q)), a);
  }
  return {b.report.map.domain_ptr(), dom.span, std::move(f)};
}

// β_{Q,M}: (Q•M)∘A → Q•(M∘A).
inline FiniteMapReport beta_general(const SmallCategory& A, const SpanModule& Q, const SpanPtr& M) {
  using detail::id;
  SpanPtr const& P = A.arrows_ptr();
  SpanPtr QM = bullet_product(Q.carrier_ptr(), M);
  SpanPtr MA = circ_product(M, P);
  return FiniteMapReport(bullet_map(Q.action_map(A), id(MA)) * interchange(Q.carrier_ptr(), M, P, P) *
                         circ_map(id(QM), A.Delta()));
}

struct GroupoidVerdict {
  bool groupoid = false;
  std::vector<std::size_t> inverse;           // filled by the direct test on success
  std::optional<std::size_t> non_invertible;  // direct witness
  std::optional<BetaCertificate> certificate; // witness of the β test
};

inline GroupoidVerdict is_groupoid_direct(const SmallCategory& A) {
  GroupoidVerdict v;
  std::vector<std::size_t> inv(A.size(), npos);
  for (std::size_t a = 0; a < A.size(); ++a) {
    for (std::size_t b : A.hom(A.tgt(a), A.src(a))) {
      if (A(a, b) == A.identity(A.tgt(a)) && A(b, a) == A.identity(A.src(a))) {
        inv[a] = b;
        break;
      }
    }
    if (inv[a] == npos) {
      v.non_invertible = a;
      return v;
    }
  }
  v.groupoid = true;
  v.inverse = std::move(inv);
  return v;
}

struct CounterexampleModule {
  SpanModule module;
  std::array<std::size_t, 3> collision;  // q_u, p_u, b with q_u.b = p_u.b
};

// Module Q with arrows w → u: q_w and p_w when some arrow u → w exists,
// r_w otherwise. Requires no arrow u → v and some arrow v → u.
inline CounterexampleModule counterexample_module(const SmallCategory& A, std::size_t u, std::size_t v) {
  const ObjectSet& X = A.objects();
  if (u >= X.size() || v >= X.size()) throw ValidationError("counterexample: object out of range");
  if (!A.hom(u, v).empty() || A.hom(v, u).empty()) {
    throw PreconditionError("construction inapplicable: need no arrow " + X.label(u) + "->" + X.label(v) +
                            " and some arrow " + X.label(v) + "->" + X.label(u));
  }
  std::vector<bool> reach(X.size());
  for (std::size_t w = 0; w < X.size(); ++w) reach[w] = !A.hom(u, w).empty();
  std::vector<std::string> names;
  std::vector<std::size_t> s;
  std::vector<std::size_t> qi(X.size(), npos), pi(X.size(), npos), ri(X.size(), npos);
  for (std::size_t w = 0; w < X.size(); ++w) {
    if (reach[w]) {
      qi[w] = names.size();
      names.push_back("q_" + X.label(w));
      s.push_back(w);
      pi[w] = names.size();
      names.push_back("p_" + X.label(w));
      s.push_back(w);
    } else {
      ri[w] = names.size();
      names.push_back("r_" + X.label(w));
      s.push_back(w);
    }
  }
  std::vector<std::size_t> t(names.size(), u);
  SpanPtr Q = Span::make(X, std::move(names), s, std::move(t));
  std::vector<std::size_t> act(Q->size() * A.size(), npos);
  for (std::size_t w = 0; w < X.size(); ++w) {
    for (std::size_t a = 0; a < A.size(); ++a) {
      if (A.tgt(a) != w) continue;
      std::size_t w2 = A.src(a);
      if (reach[w]) {
        act[qi[w] * A.size() + a] = reach[w2] ? qi[w2] : ri[w2];
        act[pi[w] * A.size() + a] = reach[w2] ? pi[w2] : ri[w2];
      } else {
        act[ri[w] * A.size() + a] = ri[w2];
      }
    }
  }
  SpanModule M(A, Q, std::move(act));
  std::size_t b = A.hom(v, u).front();
  return {std::move(M), {qi[u], pi[u], b}};
}

// Pairs (u,v) to which counterexample_module applies.
inline std::vector<std::pair<std::size_t, std::size_t>> counterexample_instances(const SmallCategory& A) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < A.objects().size(); ++u)
    for (std::size_t v = 0; v < A.objects().size(); ++v)
      if (A.hom(u, v).empty() && !A.hom(v, u).empty()) out.emplace_back(u, v);
  return out;
}

// The regular module followed by every applicable counterexample module.
inline std::vector<std::pair<std::string, SpanModule>> decision_modules(const SmallCategory& A) {
  std::vector<std::pair<std::string, SpanModule>> out;
  out.emplace_back("A", SpanModule::regular(A));
  for (auto [u, v] : counterexample_instances(A)) {
    out.emplace_back("counterexample(" + A.objects().label(u) + "," + A.objects().label(v) + ")",
                     counterexample_module(A, u, v).module);
  }
  return out;
}

inline GroupoidVerdict is_groupoid_via_beta(const SmallCategory& A) {
  GroupoidVerdict v;
  for (auto const& [label, Q] : decision_modules(A)) {
    ExplicitBeta b = beta_on_module(A, Q);
    if (!b.report.bijective()) {
      v.certificate = b.certificate(label, Q);
      return v;
    }
  }
  v.groupoid = true;
  return v;
}

// Independent re-check of a β certificate from the raw tables.
inline bool verify_beta_certificate(const SmallCategory& A, const BetaCertificate& c) {
  const SpanModule& Q = c.module;
  if (!Q.check(A).all_passed()) return false;
  const Span& S = Q.carrier();
  auto loop_at = [&](std::size_t q, std::size_t x) { return S.src(q) == x && S.tgt(q) == x; };
  if (c.collision) {
    auto [q1, q2, a] = *c.collision;
    if (q1 == q2 || q1 >= S.size() || q2 >= S.size() || a >= A.size()) return false;
    if (!loop_at(q1, A.tgt(a)) || !loop_at(q2, A.tgt(a))) return false;
    auto x = Q.act(q1, a), y = Q.act(q2, a);
    return x && y && *x == *y;
  }
  if (c.missed) {
    auto [q2, a] = *c.missed;
    if (q2 >= S.size() || a >= A.size()) return false;
    if (S.src(q2) != A.src(a) || S.tgt(q2) != A.tgt(a)) return false;
    for (std::size_t q = 0; q < S.size(); ++q) {
      if (!loop_at(q, A.tgt(a))) continue;
      if (Q.act(q, a) == q2) return false;
    }
    return true;
  }
  return false;
}

// Independent re-check that an arrow has no two-sided inverse.
inline bool verify_non_invertible(const SmallCategory& A, std::size_t a) {
  for (std::size_t b = 0; b < A.size(); ++b) {
    if (A.src(b) != A.tgt(a) || A.tgt(b) != A.src(a)) continue;
    auto ab = A.compose(a, b), ba = A.compose(b, a);
    if (ab && ba && *ab == A.identity(A.tgt(a)) && *ba == A.identity(A.src(a))) return false;
  }
  return true;
}

struct Coinvariants {
  SliceObject slice;
  std::vector<std::size_t> inclusion;  // slice element -> carrier element
};

namespace detail {
// ρ: X → X•A, x ↦ (x, c(x)).
inline SpanMap coaction(const SpanPtr& carrier, const SmallCategory& A, const std::vector<std::size_t>& grade) {
  SpanProduct XA = bullet(carrier, A.arrows_ptr());
  std::vector<std::size_t> f(carrier->size());
  for (std::size_t x = 0; x < f.size(); ++x) f[x] = XA.at(x, grade[x]);
  return {carrier, XA.span, std::move(f)};
}

// φ⁰ = ρ•I and φ¹ = ((X•η)•I)(X•δ) up to associativity, both X•I → (X•A)•I.
inline std::pair<SpanMap, SpanMap> coinvariant_pair(const SpanPtr& carrier, const SmallCategory& A,
                                                    const std::vector<std::size_t>& grade) {
  SpanPtr I = unit_I(A.objects());
  SpanMap phi0 = bullet_map(coaction(carrier, A, grade), id(I));
  SpanMap phi1 = bullet_map(bullet_map(id(carrier), A.eta()), id(I)) * bullet_associator(carrier, I, I).inverse() *
                 bullet_map(id(carrier), delta_I(A.objects()));
  return {std::move(phi0), std::move(phi1)};
}
}  // namespace detail

// Equalizer of φ⁰, φ¹: the loops x with c(x) = 1_{s(x)}, anchored by s.
inline Coinvariants coinvariants(const SmallCategory& A, const HopfModuleSpan& X) {
  auto [phi0, phi1] = detail::coinvariant_pair(X.carrier_ptr(), A, X.grades());
  SpanProduct XI = bullet(X.carrier_ptr(), unit_I(A.objects()));
  std::vector<std::string> names;
  std::vector<std::size_t> anchor, incl;
  for (std::size_t i = 0; i < XI.components.size(); ++i) {
    if (phi0(i) != phi1(i)) continue;
    auto [x, o] = XI.components[i];
    names.push_back(X.carrier().name(x));
    anchor.push_back(o);
    incl.push_back(x);
  }
  return {SliceObject(A.objects(), std::move(names), anchor), std::move(incl)};
}

// K(Z) = Z∘A with (z,a).b = (z,a.b) and c(z,a) = a.
inline HopfModuleSpan comparison_K(const SmallCategory& A, const SliceObject& Z) {
  SpanProduct ZA = circ(Z.span(), A.arrows_ptr());
  std::vector<std::size_t> act(ZA.components.size() * A.size(), npos);
  std::vector<std::size_t> grade(ZA.components.size());
  for (std::size_t i = 0; i < ZA.components.size(); ++i) {
    auto [z, a] = ZA.components[i];
    grade[i] = a;
    for (std::size_t b = 0; b < A.size(); ++b) {
      if (auto ab = A.compose(a, b)) act[i * A.size() + b] = ZA.at(z, *ab);
    }
  }
  return {A, SpanModule(A, ZA.span, std::move(act)), std::move(grade)};
}

struct CounitReport {
  Coinvariants coinvariants;
  FiniteMapReport counit;
  std::optional<SpanMap> inverse;  // x ↦ (x.c(x)⁻¹, c(x)), built when A is a groupoid
  bool inverse_verified = false;
};

// ε_X: X^coA∘A → X, (x,a) ↦ x.a.
inline CounitReport fthm_counit(const SmallCategory& A, const HopfModuleSpan& X) {
  Coinvariants C = coinvariants(A, X);
  SpanProduct dom = circ(C.slice.span(), A.arrows_ptr());
  std::vector<std::size_t> f(dom.components.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto [k, a] = dom.components[i];
    f[i] = X.module()(C.inclusion[k], a);
  }
  CounitReport out{C, FiniteMapReport(SpanMap(dom.span, X.carrier_ptr(), std::move(f))), std::nullopt, false};
  GroupoidVerdict g = is_groupoid_direct(A);
  if (!g.groupoid) return out;
  std::vector<std::size_t> back(X.size(), npos);
  for (std::size_t k = 0; k < C.inclusion.size(); ++k) back[C.inclusion[k]] = k;
  std::vector<std::size_t> inv(X.size());
  for (std::size_t x = 0; x < X.size(); ++x) {
    std::size_t c = X.grade(x);
    std::size_t y = X.module()(x, g.inverse[c]);
    if (back[y] == npos) return out;
    inv[x] = dom.at(back[y], c);
  }
  SpanMap h(X.carrier_ptr(), dom.span, std::move(inv));
  out.inverse_verified = (out.counit.map * h).assignment() == SpanMap::identity(X.carrier_ptr()).assignment() &&
                         (h * out.counit.map).assignment() == SpanMap::identity(dom.span).assignment();
  out.inverse = std::move(h);
  return out;
}

// ν_Z: Z → K(Z)^coA, z ↦ (z, 1_{anchor z}).
inline FiniteMapReport fthm_unit(const SmallCategory& A, const SliceObject& Z) {
  HopfModuleSpan K = comparison_K(A, Z);
  Coinvariants C = coinvariants(A, K);
  SpanProduct ZA = circ(Z.span(), A.arrows_ptr());
  std::vector<std::size_t> back(K.size(), npos);
  for (std::size_t k = 0; k < C.inclusion.size(); ++k) back[C.inclusion[k]] = k;
  std::vector<std::size_t> f(Z.size());
  for (std::size_t z = 0; z < Z.size(); ++z) {
    std::size_t k = back[ZA.at(z, A.identity(Z.anchor(z)))];
    if (k == npos) throw ValidationError("unit: (" + Z.name(z) + ",1) is not coinvariant");
    f[z] = k;
  }
  return FiniteMapReport(SpanMap(Z.span(), C.slice.span(), std::move(f)));
}

inline Report check_comodule_monoid(const ComoduleMonoidSpan& B) {
  using detail::id;
  Report r;
  const SmallCategory& Bt = B.total();
  const SmallCategory& A = B.base();
  std::optional<SpanMap> c;
  try {
    c.emplace(Bt.arrows_ptr(), A.arrows_ptr(), B.grades());
    r.add("grade is a span map", true);
  } catch (const Error& e) {
    r.add("grade is a span map", false, e.what());
    return r;
  }
  for (std::size_t b = 0; b < Bt.size(); ++b)
    for (std::size_t b2 = 0; b2 < Bt.size(); ++b2) {
      auto bb = Bt.compose(b, b2);
      if (bb && B.grade(*bb) != A(B.grade(b), B.grade(b2))) {
        r.record("grade multiplicative", false, "(" + Bt.name(b) + "," + Bt.name(b2) + ")");
      }
    }
  r.record("grade multiplicative", true);
  for (std::size_t x = 0; x < Bt.objects().size(); ++x) {
    if (B.grade(Bt.identity(x)) != A.identity(x)) r.record("grade unital", false, Bt.name(Bt.identity(x)));
  }
  r.record("grade unital", true);

  SpanPtr const& PB = Bt.arrows_ptr();
  SpanPtr const& PA = A.arrows_ptr();
  SpanMap rho = detail::coaction(PB, A, B.grades());
  detail::record_diagram(r, "coaction multiplicative", [&] {
    return detail::disagreement(rho * Bt.mu(), bullet_map(Bt.mu(), A.mu()) * interchange(PB, PA, PB, PA) *
                                                   circ_map(rho, rho));
  });
  detail::record_diagram(r, "coaction unital", [&] {
    return detail::disagreement(rho * Bt.eta(), bullet_map(Bt.eta(), A.eta()) * delta_I(A.objects()));
  });
  detail::record_diagram(r, "coaction coassociative", [&] {
    return detail::disagreement(bullet_map(rho, id(PA)) * rho,
                                bullet_associator(PB, PA, PA).inverse() * bullet_map(id(PB), A.Delta()) * rho);
  });
  detail::record_diagram(r, "coaction counital", [&] {
    return detail::disagreement(bullet_right_unitor(PB) * bullet_map(id(PB), A.epsilon()) * rho, id(PB));
  });
  return r;
}

// X is a module over B.total() graded in B.base(): c(x.b) = c(x).c_B(b).
inline Report check_relative_hopf(const ComoduleMonoidSpan& B, const GradedModule& X) {
  using detail::id;
  const SmallCategory& Bt = B.total();
  const SmallCategory& A = B.base();
  Report r = X.module.check(Bt);
  if (!r.all_passed()) return r;
  const Span& S = X.module.carrier();
  if (X.grade.size() != S.size()) {
    r.add("grade is a span map", false, "grade does not cover the carrier");
    return r;
  }
  try {
    SpanMap(X.module.carrier_ptr(), A.arrows_ptr(), X.grade);
    r.add("grade is a span map", true);
  } catch (const Error& e) {
    r.add("grade is a span map", false, e.what());
    return r;
  }
  for (std::size_t x = 0; x < S.size(); ++x)
    for (std::size_t b = 0; b < Bt.size(); ++b) {
      auto xb = X.module.act(x, b);
      if (xb && X.grade[*xb] != A(X.grade[x], B.grade(b))) {
        r.record("relative Hopf compatibility", false, S.name(x) + "." + Bt.name(b));
      }
    }
  r.record("relative Hopf compatibility", true);
  SpanPtr const& PX = X.module.carrier_ptr();
  detail::record_diagram(r, "coaction is a module map", [&] {
    SpanMap rx = detail::coaction(PX, A, X.grade);
    SpanMap rb = detail::coaction(Bt.arrows_ptr(), A, B.grades());
    return detail::disagreement(rx * X.module.action_map(Bt), bullet_map(X.module.action_map(Bt), A.mu()) *
                                                                   interchange(PX, A.arrows_ptr(), Bt.arrows_ptr(),
                                                                               A.arrows_ptr()) *
                                                                   circ_map(rx, rb));
  });
  return r;
}

struct CoinvariantSubmonoid {
  SmallCategory category;  // B^c
  SpanMap omega;           // B^c → B
  Report morphism;         // ω preserves composition and identities
};

inline CoinvariantSubmonoid coinvariant_submonoid(const ComoduleMonoidSpan& B) {
  const SmallCategory& Bt = B.total();
  const SmallCategory& A = B.base();
  std::vector<std::size_t> keep, pos(Bt.size(), npos);
  for (std::size_t b = 0; b < Bt.size(); ++b) {
    if (Bt.src(b) == Bt.tgt(b) && B.grade(b) == A.identity(Bt.src(b))) {
      pos[b] = keep.size();
      keep.push_back(b);
    }
  }
  std::vector<std::string> names;
  std::vector<std::size_t> s;
  for (auto b : keep) {
    names.push_back(Bt.name(b));
    s.push_back(Bt.src(b));
  }
  SpanPtr C = Span::make(Bt.objects(), std::move(names), s, s);
  std::vector<std::size_t> id(Bt.objects().size());
  for (std::size_t x = 0; x < id.size(); ++x) {
    id[x] = pos[Bt.identity(x)];
    if (id[x] == npos) throw PreconditionError("coinvariants: grade of an identity is not an identity");
  }
  std::vector<std::size_t> table(keep.size() * keep.size(), npos);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (auto c = Bt.compose(keep[i], keep[j])) {
        if (pos[*c] == npos) throw PreconditionError("coinvariants: not closed under composition");
        table[i * keep.size() + j] = pos[*c];
      }
    }
  SmallCategory Bc(C, std::move(id), std::move(table));
  SpanMap omega(C, Bt.arrows_ptr(), keep);
  Report m;
  detail::record_diagram(m, "omega preserves composition",
                         [&] { return detail::disagreement(omega * Bc.mu(), Bt.mu() * circ_map(omega, omega)); });
  detail::record_diagram(m, "omega preserves identities",
                         [&] { return detail::disagreement(omega * Bc.eta(), Bt.eta()); });
  return {std::move(Bc), std::move(omega), std::move(m)};
}

// Quotient of the codomain of two parallel maps by the equivalence they
// generate.
struct SpanQuotient {
  SpanPtr quotient;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> representative;
};

inline SpanQuotient coequalize(const SpanMap& f, const SpanMap& g) {
  if (!same_span(f.domain_ptr(), g.domain_ptr()) || !same_span(f.codomain_ptr(), g.codomain_ptr())) {
    throw DimensionError("coequalize: maps are not parallel");
  }
  const Span& C = f.codomain();
  UnionFind uf(C.size());
  for (std::size_t i = 0; i < f.domain().size(); ++i) uf.unite(f(i), g(i));
  std::size_t n = 0;
  std::vector<std::size_t> cls = uf.classes(&n);
  std::vector<std::size_t> rep(n, npos);
  for (std::size_t i = 0; i < C.size(); ++i)
    if (rep[cls[i]] == npos) rep[cls[i]] = i;
  std::vector<std::string> names;
  std::vector<std::size_t> s, t;
  for (auto r : rep) {
    names.push_back("[" + C.name(r) + "]");
    s.push_back(C.src(r));
    t.push_back(C.tgt(r));
  }
  return {Span::make(C.objects(), std::move(names), std::move(s), std::move(t)), std::move(cls), std::move(rep)};
}

// P∘_{B^c}B: coequalizer of (P∘B^c)∘B ⇉ P∘B.
inline SpanQuotient relative_tensor(const SmallCategory& Bc, const SpanModule& P, const SmallCategory& B,
                                    const SpanMap& omega) {
  using detail::id;
  SpanMap f = circ_map(P.action_map(Bc), id(B.arrows_ptr()));
  SpanMap g = circ_map(id(P.carrier_ptr()), B.mu() * circ_map(omega, id(B.arrows_ptr()))) *
              circ_associator(P.carrier_ptr(), Bc.arrows_ptr(), B.arrows_ptr());
  return coequalize(f, g);
}

struct RelativeBeta {
  SpanQuotient tensor;      // (Q•I)∘_{B^c}B
  FiniteMapReport beta;     // induced map into Q•A
  bool well_defined = true; // β⁰ constant on classes
};

// β_Q induced by β⁰_Q: (Q•I)∘B → Q•A, ((q,x),b) ↦ (q.b, c(b)).
inline RelativeBeta beta_relative(const ComoduleMonoidSpan& B, const SpanModule& Q) {
  using detail::id;
  const SmallCategory& Bt = B.total();
  const SmallCategory& A = B.base();
  CoinvariantSubmonoid CS = coinvariant_submonoid(B);
  SpanPtr I = unit_I(A.objects());
  SpanProduct QI = bullet(Q.carrier_ptr(), I);
  const SmallCategory& Bc = CS.category;
  std::vector<std::size_t> act(QI.components.size() * Bc.size(), npos);
  for (std::size_t i = 0; i < QI.components.size(); ++i) {
    auto [q, x] = QI.components[i];
    for (std::size_t b = 0; b < Bc.size(); ++b) {
      if (Bc.tgt(b) != x) continue;
      act[i * Bc.size() + b] = QI.at(Q(q, CS.omega(b)), x);
    }
  }
  SpanModule P(Bc, QI.span, std::move(act));
  SpanQuotient T = relative_tensor(Bc, P, Bt, CS.omega);

  SpanPtr QB = circ_product(Q.carrier_ptr(), Bt.arrows_ptr());
  SpanMap rho = detail::coaction(Bt.arrows_ptr(), A, B.grades());
  SpanMap beta0 = bullet_map(Q.action_map(Bt), id(A.arrows_ptr())) *
                  bullet_map(id(QB), circ_left_unitor(A.arrows_ptr())) *
                  interchange(Q.carrier_ptr(), I, Bt.arrows_ptr(), A.arrows_ptr()) * circ_map(id(QI.span), rho);
  bool ok = true;
  std::vector<std::size_t> f(T.representative.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = beta0(T.representative[k]);
  for (std::size_t i = 0; i < T.class_of.size(); ++i)
    if (beta0(i) != f[T.class_of[i]]) ok = false;
  SpanMap induced(T.quotient, beta0.codomain_ptr(), std::move(f));
  return {std::move(T), FiniteMapReport(std::move(induced)), ok};
}

struct Verdict {
  bool holds = false;
  std::string witness;
  Report report;
};

inline Verdict is_galois(const ComoduleMonoidSpan& B, const std::vector<std::pair<std::string, SpanModule>>& corpus) {
  Verdict v;
  Report axioms = check_comodule_monoid(B);
  v.report.add("comodule monoid axioms", axioms.all_passed(),
               axioms.first_failure() ? axioms.first_failure()->name + ": " + axioms.first_failure()->witness : "");
  if (!axioms.all_passed()) {
    v.witness = v.report.first_failure()->witness;
    return v;
  }
  CoinvariantSubmonoid CS = coinvariant_submonoid(B);
  v.report.add("coinvariant submonoid", CS.morphism.all_passed(), "omega is not a monoid morphism");
  std::vector<std::pair<std::string, SpanModule>> all;
  all.emplace_back("B", SpanModule::regular(B.total()));
  for (auto const& m : corpus) all.push_back(m);
  v.report.record("beta well defined", true);
  v.report.record("beta bijective", true);
  for (auto const& [label, Q] : all) {
    RelativeBeta rb = beta_relative(B, Q);
    if (!rb.well_defined) v.report.record("beta well defined", false, label);
    if (!rb.beta.bijective()) v.report.record("beta bijective", false, label + ": " + rb.beta.describe_failure());
  }
  v.holds = v.report.all_passed();
  if (!v.holds) v.witness = v.report.first_failure()->witness;
  return v;
}

// θ: ((X•A)•I)∘J → (X•I)∘J and its two identities; requires A a groupoid.
inline Report theta_contraction(const SmallCategory& A, const HopfModuleSpan& X) {
  using detail::id;
  if (!is_groupoid_direct(A).groupoid) throw PreconditionError("theta: A is not a groupoid");
  const ObjectSet& Ob = A.objects();
  SpanPtr I = unit_I(Ob), J = unit_J(Ob);
  SpanPtr const& PX = X.carrier_ptr();
  SpanPtr XI = bullet_product(PX, I);
  SpanPtr XIJ = circ_product(XI, J);
  SpanMap beta_inv = beta_literal(A, X.module()).inverse();
  SpanMap theta = circ_map(id(XI), varpi_J(Ob)) * circ_associator(XI, J, J) *
                  circ_map(bullet_right_unitor(XIJ), id(J)) *
                  circ_map(bullet_map(circ_map(id(XI), A.epsilon()), tau(Ob)), id(J)) *
                  circ_map(bullet_map(beta_inv, id(I)), id(J));
  auto [phi0, phi1] = detail::coinvariant_pair(PX, A, X.grades());
  SpanMap f0 = circ_map(phi0, id(J)), f1 = circ_map(phi1, id(J));
  Report r;
  detail::record_diagram(r, "theta retracts phi1", [&] { return detail::disagreement(theta * f1, id(XIJ)); });
  detail::record_diagram(r, "theta contracts phi0",
                         [&] { return detail::disagreement(f1 * theta * f0, f0 * theta * f0); });
  return r;
}

// For X = K(Z): υ: Z∘J → ((Z∘A)•I)∘J and π back, with πυ = id and
// υπ = θ(φ⁰∘J).
inline Report free_contraction(const SmallCategory& A, const SliceObject& Z) {
  using detail::id;
  if (!is_groupoid_direct(A).groupoid) throw PreconditionError("contraction: A is not a groupoid");
  const ObjectSet& Ob = A.objects();
  SpanPtr I = unit_I(Ob), J = unit_J(Ob);
  SpanPtr const& PZ = Z.span();
  SpanPtr ZJ = circ_product(PZ, J);
  std::vector<std::size_t> diag(Z.size());
  SpanProduct ZI = bullet(PZ, I);
  for (std::size_t z = 0; z < Z.size(); ++z) diag[z] = ZI.at(z, Z.anchor(z));
  SpanMap rho(PZ, ZI.span, std::move(diag));
  SpanMap upsilon = circ_map(bullet_map(circ_map(id(PZ), A.eta()), id(I)), id(J)) *
                    circ_map(bullet_map(circ_right_unitor(PZ).inverse(), id(I)), id(J)) * circ_map(rho, id(J));
  SpanMap pi = circ_map(id(PZ), varpi_J(Ob)) * circ_associator(PZ, J, J) * circ_map(bullet_right_unitor(ZJ), id(J)) *
               circ_map(bullet_map(circ_map(id(PZ), A.epsilon()), tau(Ob)), id(J));
  HopfModuleSpan K = comparison_K(A, Z);
  SpanPtr KI = bullet_product(K.carrier_ptr(), I);
  SpanPtr KIJ = circ_product(KI, J);
  SpanMap beta_inv = beta_literal(A, K.module()).inverse();
  SpanMap theta = circ_map(id(KI), varpi_J(Ob)) * circ_associator(KI, J, J) *
                  circ_map(bullet_right_unitor(KIJ), id(J)) *
                  circ_map(bullet_map(circ_map(id(KI), A.epsilon()), tau(Ob)), id(J)) *
                  circ_map(bullet_map(beta_inv, id(I)), id(J));
  SpanMap phi0 = detail::coinvariant_pair(K.carrier_ptr(), A, K.grades()).first;
  Report r;
  detail::record_diagram(r, "pi retracts upsilon", [&] { return detail::disagreement(pi * upsilon, id(ZJ)); });
  detail::record_diagram(r, "upsilon pi equals theta phi0",
                         [&] { return detail::disagreement(upsilon * pi, theta * circ_map(phi0, id(J))); });
  return r;
}

// Compatibilities of β with the counit, the unit, the comultiplication and
// free modules, each as a literal composite.
inline Report check_beta_lemmas(const SmallCategory& A, const SpanModule& Q, const SpanPtr& M) {
  using detail::id;
  const ObjectSet& Ob = A.objects();
  SpanPtr I = unit_I(Ob);
  SpanPtr const& PQ = Q.carrier_ptr();
  SpanPtr const& PA = A.arrows_ptr();
  SpanPtr QI = bullet_product(PQ, I);
  SpanMap gamma = Q.action_map(A);
  SpanMap beta = beta_literal(A, Q);
  Report r;
  detail::record_diagram(r, "beta and the counit", [&] {
    SpanMap lhs = bullet_right_unitor(PQ) * bullet_map(id(PQ), A.epsilon()) * beta;
    SpanMap rhs = gamma * circ_map(bullet_right_unitor(PQ), id(PA)) * circ_map(bullet_map(id(PQ), tau(Ob)), id(PA));
    return detail::disagreement(lhs, rhs);
  });
  detail::record_diagram(r, "beta and the unit", [&] {
    SpanMap lhs = beta * circ_map(id(QI), A.eta()) * circ_right_unitor(QI).inverse();
    return detail::disagreement(lhs, bullet_map(id(PQ), A.eta()));
  });
  detail::record_diagram(r, "beta and the comultiplication", [&] {
    SpanPtr QA = bullet_product(PQ, PA);
    SpanMap act = bullet_map(gamma, A.mu()) * interchange(PQ, PA, PA, PA) * circ_map(id(QA), A.Delta());
    SpanModule QAmod = SpanModule::from_action_map(A, act);
    SpanMap top = beta_literal(A, QAmod) * circ_map(bullet_map(bullet_map(id(PQ), A.eta()), id(I)), id(PA)) *
                  circ_map(bullet_associator(PQ, I, I).inverse(), id(PA)) *
                  circ_map(bullet_map(id(PQ), delta_I(Ob)), id(PA));
    SpanMap bottom = bullet_associator(PQ, PA, PA).inverse() * bullet_map(id(PQ), A.Delta()) * beta;
    return detail::disagreement(top, bottom);
  });
  detail::record_diagram(r, "beta on free modules", [&] {
    SpanPtr MA = circ_product(M, PA);
    SpanPtr MI = bullet_product(M, I);
    SpanMap act = circ_map(id(M), A.mu()) * circ_associator(M, PA, PA);
    SpanModule free = SpanModule::from_action_map(A, act);
    SpanMap top = beta_literal(A, free) * circ_map(bullet_map(circ_map(id(M), A.eta()), id(I)), id(PA)) *
                  circ_map(bullet_map(circ_right_unitor(M).inverse(), id(I)), id(PA));
    SpanMap bottom = bullet_map(id(MA), circ_left_unitor(PA)) * interchange(M, I, PA, PA) * circ_map(id(MI), A.Delta());
    return detail::disagreement(top, bottom);
  });
  return r;
}

// Backtracking search for a grade making Q a Hopf module.
inline std::optional<std::vector<std::size_t>> find_hopf_grade(const SmallCategory& A, const SpanModule& Q) {
  const Span& S = Q.carrier();
  std::vector<std::size_t> c(S.size(), npos);
  std::vector<std::vector<std::size_t>> options(S.size());
  for (std::size_t q = 0; q < S.size(); ++q) options[q] = A.hom(S.src(q), S.tgt(q));
  auto consistent = [&](std::size_t q) {
    for (std::size_t a = 0; a < A.size(); ++a) {
      auto qa = Q.act(q, a);
      if (qa && c[*qa] != npos && c[*qa] != A(c[q], a)) return false;
    }
    for (std::size_t p = 0; p < S.size(); ++p) {
      if (c[p] == npos) continue;
      for (std::size_t a = 0; a < A.size(); ++a) {
        auto pa = Q.act(p, a);
        if (pa && *pa == q && c[q] != A(c[p], a)) return false;
      }
    }
    return true;
  };
  auto go = [&](auto&& self, std::size_t q) -> bool {
    if (q == S.size()) return true;
    for (auto o : options[q]) {
      c[q] = o;
      if (consistent(q) && self(self, q + 1)) return true;
    }
    c[q] = npos;
    return false;
  };
  if (!go(go, 0)) return std::nullopt;
  return c;
}

// Equivalence of (i) Galois, (ii) β bijective and (iii) the fundamental
// theorem, on a finite corpus, cross-checked against the direct test.
inline Report verify_fthm(const SmallCategory& A, const std::vector<HopfModuleSpan>& corpus,
                          const std::vector<SliceObject>& slices) {
  Report r;
  auto modules = decision_modules(A);
  for (std::size_t i = 0; i < corpus.size(); ++i) modules.emplace_back("corpus#" + std::to_string(i), corpus[i].module());

  Verdict galois = is_galois(ComoduleMonoidSpan::trivial(A), modules);
  r.add("(i) Galois extension", galois.holds, galois.witness);

  std::string beta_witness;
  for (auto const& [label, Q] : modules) {
    ExplicitBeta b = beta_on_module(A, Q);
    if (!b.report.bijective()) {
      beta_witness = label + ": " + b.report.describe_failure();
      break;
    }
  }
  bool beta_ok = beta_witness.empty();
  r.add("(ii) beta bijective", beta_ok, beta_witness);

  std::vector<HopfModuleSpan> hopf = corpus;
  hopf.emplace_back(A, SpanModule::regular(A), ComoduleMonoidSpan::trivial(A).grades());
  for (auto const& [label, Q] : modules) {
    if (label.rfind("counterexample", 0) != 0) continue;
    if (auto c = find_hopf_grade(A, Q)) hopf.emplace_back(A, Q, *c);
  }
  std::string fthm_witness;
  for (std::size_t i = 0; i < hopf.size() && fthm_witness.empty(); ++i) {
    CounitReport cr = fthm_counit(A, hopf[i]);
    if (!cr.counit.bijective()) fthm_witness = "counit on Hopf module #" + std::to_string(i) + ": " + cr.counit.describe_failure();
  }
  for (std::size_t i = 0; i < slices.size() && fthm_witness.empty(); ++i) {
    FiniteMapReport u = fthm_unit(A, slices[i]);
    if (!u.bijective()) fthm_witness = "unit on slice #" + std::to_string(i) + ": " + u.describe_failure();
  }
  bool fthm_ok = fthm_witness.empty();
  r.add("(iii) fundamental theorem", fthm_ok, fthm_witness);

  GroupoidVerdict direct = is_groupoid_direct(A);
  bool consistent = direct.groupoid ? (galois.holds && beta_ok && fthm_ok) : (!galois.holds && !beta_ok);
  r.add("(i) and (ii) agree", galois.holds == beta_ok, "Galois and beta legs disagree");
  r.add("consistent with direct groupoid test", consistent,
        direct.groupoid ? "a leg fails although A is a groupoid" : "legs hold although A is not a groupoid");
  return r;
}

}  // namespace duoidal
