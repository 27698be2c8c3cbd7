#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "duoidal/duoidal.hpp"
#include "duoidal/json_io.hpp"

using namespace duoidal;
using json_io::json;

namespace {

constexpr double kAxiomSeconds = 60.0;
constexpr double kGroupoidSeconds = 10.0;
constexpr double kHopfSeconds = 5.0;
constexpr double kDualSeconds = 30.0;
constexpr std::size_t kSpanTuples = 200;
constexpr std::size_t kBimTuples = 100;
constexpr std::size_t kMaxObjects = 4;
constexpr std::size_t kMaxSpan = 5;
constexpr std::size_t kMaxBimDim = 3;
constexpr std::size_t kMinCorpus = 20;
constexpr std::size_t kHopfModulesPerGroupoid = 50;
constexpr std::size_t kDualModules = 10;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string failure_of(const Report& r) {
  auto const* f = r.first_failure();
  return f ? f->name + ": " + f->witness : "";
}

bool report(int id, const std::string& title, const std::function<Outcome()>& body, double limit = 0) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && secs >= limit) o.fail("runtime over limit");
  char timing[64];
  if (limit > 0) std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, limit);
  else std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << timing << "]";
  if (!o.detail.empty()) std::cout << " " << o.detail;
  std::cout << std::endl;
  return o.ok;
}

std::optional<SpanMap> perturb(const SpanMap& f) {
  const Span& C = f.codomain();
  for (std::size_t i = 0; i < f.domain().size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (j == f(i) || C.src(j) != C.src(f(i)) || C.tgt(j) != C.tgt(f(i))) continue;
      auto a = f.assignment();
      a[i] = j;
      return SpanMap(f.domain_ptr(), f.codomain_ptr(), a);
    }
  return std::nullopt;
}

Matrix keep_first_row(const Matrix& m) {
  if (m.rows() <= 1) return m;
  Matrix o(m.field(), 1, m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) o.set(0, j, m(0, j));
  return o;
}

Matrix add_spurious_row(const Matrix& m) {
  if (m.cols() == 0) return m;
  Matrix o(m.field(), m.rows() + 1, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) o.set(i, j, m(i, j));
  o.set(m.rows(), 0, 1);
  return o;
}

bool groupoid_oracle(const SmallCategory& A) {
  for (std::size_t a = 0; a < A.size(); ++a) {
    bool found = false;
    for (std::size_t b = 0; b < A.size() && !found; ++b) {
      auto ab = A.compose(a, b), ba = A.compose(b, a);
      found = ab && ba && *ab == A.identity(A.tgt(a)) && *ba == A.identity(A.src(a));
    }
    if (!found) return false;
  }
  return true;
}

Matrix group_inverse_matrix(const Bialgebroid& B) {
  const FDAlgebra& A = B.algebra();
  Matrix S(B.field(), A.dim(), A.dim());
  for (std::size_t g = 0; g < A.dim(); ++g)
    for (std::size_t h = 0; h < A.dim(); ++h)
      if (A.product(g, h) == A.unit()) S.set(h, g, 1);
  return S;
}

Matrix flip_matrix(PrimeField F, std::size_t n) {
  Matrix S(F, n * n, n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) S.set(y * n + x, x * n + y, 1);
  return S;
}

Outcome axiom_suite() {
  Outcome o;
  random::Rng rng(1001);
  std::size_t span_detected = 0, span_corrupted = 0;
  for (std::size_t t = 0; t < kSpanTuples; ++t) {
    ObjectSet X = random::random_objects(kMaxObjects, rng);
    std::vector<SpanPtr> spans;
    for (int i = 0; i < 6; ++i) spans.push_back(random::random_span(X, kMaxSpan, rng, "s" + std::to_string(i) + "_"));
    Report r = check_duoidal_axioms(X, spans);
    if (!r.all_passed()) o.fail("span tuple " + std::to_string(t) + " " + failure_of(r));
    if (t % 5 != 0) continue;

    SpanPtr I = unit_I(X);
    SpanAxiomOptions perturbed;
    bool visible = false;
    perturbed.interchange = [&](const SpanPtr& a, const SpanPtr& b, const SpanPtr& c, const SpanPtr& d) {
      SpanMap z = interchange(a, b, c, d);
      auto p = perturb(z);
      if (p && same_span(a, I) && same_span(b, I)) visible = true;
      return p.value_or(z);
    };
    Report c = check_duoidal_axioms(X, spans, perturbed);
    if (visible) {
      ++span_corrupted;
      if (!c.passed("unitality I∘(A•B)")) ++span_detected;
    }

    bool distinct = false;
    for (auto const& s : spans) distinct |= !s->empty();
    if (!distinct) continue;
    SpanAxiomOptions swapped;
    swapped.interchange = [](const SpanPtr& a, const SpanPtr& b, const SpanPtr& c, const SpanPtr& d) {
      return interchange(b, a, d, c);
    };
    ++span_corrupted;
    if (!check_duoidal_axioms(X, spans, swapped).all_passed()) ++span_detected;
  }
  if (span_corrupted == 0 || span_detected != span_corrupted) {
    o.fail("span corruptions detected " + std::to_string(span_detected) + "/" + std::to_string(span_corrupted));
  }

  random::BimRng brng(1002);
  std::vector<std::pair<unsigned, FDAlgebra>> bases;
  for (unsigned p : {3u, 5u})
    for (auto const& [name, R] : algebras::small_commutative(PrimeField(p)))
      if (R.dim() <= 3) bases.emplace_back(p, R);
  std::size_t bim_detected = 0, bim_corrupted = 0;
  for (std::size_t t = 0; t < kBimTuples; ++t) {
    const FDAlgebra& R = bases[t % bases.size()].second;
    BimDuoidal C(R);
    std::vector<BimPtr> mods{make_bimodule(random::random_bimodule(R, kMaxBimDim, brng)),
                             make_bimodule(random::random_bimodule(R, kMaxBimDim, brng)), C.J()};
    Report r = check_duoidal_axioms_bim(C, mods);
    if (!r.all_passed()) o.fail("bimodule tuple " + std::to_string(t) + " " + failure_of(r));
    if (t % 10 != 0 || R.dim() < 2) continue;
    for (BimDuoidal const& bad : {BimDuoidal(R, {keep_first_row, {}}), BimDuoidal(R, {{}, add_spurious_row})}) {
      ++bim_corrupted;
      if (!check_duoidal_axioms_bim(bad, {mods[0], bad.J()}).all_passed()) ++bim_detected;
    }
  }
  if (bim_corrupted == 0 || bim_detected != bim_corrupted) {
    o.fail("bimodule corruptions detected " + std::to_string(bim_detected) + "/" + std::to_string(bim_corrupted));
  }
  if (o.ok) {
    o.detail = std::to_string(kSpanTuples) + " span and " + std::to_string(kBimTuples) + " bimodule tuples, " +
               std::to_string(span_detected + bim_detected) + " corruptions detected";
  }
  return o;
}

Outcome groupoid_agreement() {
  Outcome o;
  auto corpus = catalog::standard_corpus();
  if (corpus.size() < kMinCorpus) o.fail("corpus too small");
  for (auto const& [name, A] : corpus) {
    GroupoidVerdict d = is_groupoid_direct(A), b = is_groupoid_via_beta(A);
    if (d.groupoid != b.groupoid || d.groupoid != groupoid_oracle(A)) o.fail("disagreement on " + name);
    if (!b.groupoid && !(b.certificate && verify_beta_certificate(A, *b.certificate))) o.fail("bad certificate on " + name);
  }
  SmallCategory W = catalog::walking_arrow();
  auto inst = counterexample_instances(W);
  if (inst.size() != 1) {
    o.fail("walking arrow instances");
    return o;
  }
  CounterexampleModule C = counterexample_module(W, inst[0].first, inst[0].second);
  auto grade = find_hopf_grade(W, C.module);
  if (!grade) {
    o.fail("walking arrow grade");
    return o;
  }
  HopfModuleSpan H(W, C.module, *grade);
  if (groupoid_oracle(W)) o.fail("walking arrow is a groupoid");
  if (!beta_on_module(W, SpanModule::regular(W)).report.bijective()) o.fail("walking arrow beta_A not bijective");
  if (beta_on_module(W, C.module).report.bijective()) o.fail("walking arrow counterexample beta bijective");
  if (fthm_counit(W, H).counit.bijective()) o.fail("walking arrow counterexample counit bijective");
  if (o.ok) o.detail = std::to_string(corpus.size()) + " categories, walking arrow pinned";
  return o;
}

Outcome fundamental_theorem() {
  Outcome o;
  random::Rng rng(1003);
  std::size_t groupoids = 0, others = 0;
  for (auto const& [name, A] : catalog::standard_corpus()) {
    HopfModuleSpan R(A, SpanModule::regular(A), ComoduleMonoidSpan::trivial(A).grades());
    if (coinvariants(A, R).slice.size() != A.objects().size()) o.fail("coinvariant count on " + name);
    if (groupoid_oracle(A)) {
      ++groupoids;
      std::vector<HopfModuleSpan> mods;
      std::vector<SliceObject> slices;
      for (std::size_t i = 0; i < kHopfModulesPerGroupoid; ++i) {
        mods.push_back(random::random_hopf_module(A, 4, rng));
        slices.push_back(random::random_slice(A.objects(), 0, 4, rng));
      }
      Report r = verify_fthm(A, mods, slices);
      if (!r.all_passed()) o.fail(name + " " + failure_of(r));
      for (auto const& H : mods) {
        CounitReport c = fthm_counit(A, H);
        if (!c.counit.bijective() || !c.inverse_verified) o.fail(name + " counit inverse");
      }
      for (auto const& Z : slices)
        if (!fthm_unit(A, Z).bijective()) o.fail(name + " unit");
    } else {
      ++others;
      Report r = verify_fthm(A, {random::random_hopf_module(A, 3, rng)}, {random::random_slice(A.objects(), 1, 3, rng)});
      auto const* leg = r.find("(ii) beta bijective");
      if (r.all_passed() || leg == nullptr || leg->passed || leg->witness.empty()) o.fail(name + " no failing leg");
      GroupoidVerdict v = is_groupoid_via_beta(A);
      if (!v.certificate || !verify_beta_certificate(A, *v.certificate)) o.fail(name + " certificate");
    }
  }
  if (o.ok) {
    o.detail = std::to_string(groupoids) + " groupoids x " + std::to_string(kHopfModulesPerGroupoid) +
               " modules and slices, " + std::to_string(others) + " non-groupoids certified";
  }
  return o;
}

Outcome beta_identities() {
  Outcome o;
  random::Rng rng(1004);
  std::size_t pairs = 0;
  for (auto const& [name, A] : catalog::standard_corpus()) {
    std::vector<SpanModule> mods;
    for (auto const& [label, Q] : decision_modules(A)) mods.push_back(Q);
    mods.push_back(SpanModule::regular(A));
    for (int i = 0; i < 3; ++i) mods.push_back(random::random_module(A, 3, rng));
    for (auto const& Q : mods) {
      Report r = check_beta_lemmas(A, Q, random::random_span(A.objects(), 3, rng, "g"));
      ++pairs;
      if (!r.all_passed()) o.fail(name + " " + failure_of(r));
    }
    if (!groupoid_oracle(A)) continue;
    for (int i = 0; i < 5; ++i) {
      Report t = theta_contraction(A, random::random_hopf_module(A, 3, rng));
      Report f = free_contraction(A, random::random_slice(A.objects(), 0, 3, rng));
      if (!t.all_passed()) o.fail(name + " " + failure_of(t));
      if (!f.all_passed()) o.fail(name + " " + failure_of(f));
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " (A, Q) pairs";
  return o;
}

Outcome hopf_characterization() {
  Outcome o;
  PrimeField F3(3), F5(5);
  Bialgebroid C2 = bialgebroids::cyclic_group_algebra(F3, 2);
  AntipodeResult a = compute_antipode(C2);
  if (!a.hopf || !a.S || !a.S->is_identity() || !(*a.S == group_inverse_matrix(C2))) o.fail("F3C2 antipode");
  else {
    Report ax = check_antipode_axioms(C2, *a.S);
    if (!ax.all_passed() || ax.entries().size() < 4) o.fail("F3C2 " + failure_of(ax));
    Report ids = check_translation_identities(C2, a);
    if (!ids.all_passed()) o.fail("F3C2 " + failure_of(ids));
  }

  Bialgebroid M = bialgebroids::idempotent_monoid_algebra(F3);
  AntipodeResult m = compute_antipode(M);
  if (m.hopf || m.varsigma.report.rank != 3) o.fail("F3{1,m} verdict");
  if (!m.kernel_witness || !verify_kernel_witness(M, *m.kernel_witness)) o.fail("F3{1,m} witness");

  Bialgebroid P = bialgebroids::pair_bialgebroid(algebras::dual_numbers(F5));
  AntipodeResult p = compute_antipode(P);
  if (!p.hopf || !p.S || !(*p.S == flip_matrix(F5, 2))) o.fail("pair bialgebroid antipode");
  else {
    Report ax = check_antipode_axioms(P, *p.S);
    if (!ax.all_passed()) o.fail("pair " + failure_of(ax));
    Report ids = check_translation_identities(P, p);
    if (!ids.all_passed()) o.fail("pair " + failure_of(ids));
  }
  for (auto const* B : {&C2, &M, &P})
    if (!check_bialgebroid(*B).all_passed()) o.fail("bialgebroid axioms");
  if (o.ok) o.detail = "F3C2 identity, F3{1,m} rank 3, pair flip";
  return o;
}

Outcome dual_fthm() {
  Outcome o;
  random::BimRng rng(1006);
  for (auto const& B : {bialgebroids::cyclic_group_algebra(PrimeField(3), 2),
                        bialgebroids::pair_bialgebroid(algebras::dual_numbers(PrimeField(5)))}) {
    std::vector<BimPtr> mods{make_bimodule(regular_bimodule(B.base()))};
    while (mods.size() < kDualModules) mods.push_back(make_bimodule(random::random_symmetric_bimodule(B.base(), 2, rng)));
    std::vector<HopfModuleBim> hopf;
    for (auto const& M : mods) {
      HopfModuleBim G = comparison_G(B, M);
      if (G.dim() > 0) hopf.push_back(transport(B, G, random::random_invertible(B.field(), G.dim(), rng)));
    }
    if (hopf.size() < kDualModules) o.fail("too few Hopf modules");
    Report r = dual_fthm_check(B, mods, hopf);
    if (!r.all_passed()) o.fail(failure_of(r));
    for (auto const& X : hopf) {
      Report c = dual_coinvariants_oracle(B, X);
      if (!c.all_passed()) o.fail("oracle " + failure_of(c));
      if (!dual_unit(B, X).map.invertible()) o.fail("unit");
    }
    for (auto const& M : mods)
      if (!dual_counit(B, M).map.invertible()) o.fail("counit");
  }
  if (o.ok) o.detail = std::to_string(kDualModules) + " modules per bialgebroid";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::filesystem::path& out) {
  std::string cmd = std::string("\"") + DUOIDAL_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

Outcome determinism() {
  Outcome o;
  const std::string dir = DUOIDAL_DATA_DIR;
  std::vector<std::pair<std::string, std::string>> runs{
      {"span-axioms", "spans_xy.json"},       {"span-bimonoid", "walking_arrow.json"},
      {"span-is-groupoid", "walking_arrow.json"}, {"span-beta", "walking_arrow.json"},
      {"span-counterexample", "walking_arrow.json"}, {"span-fthm", "c2.json"},
      {"span-fthm", "walking_arrow.json"},    {"span-galois", "idempotent_monoid_category.json"},
      {"bim-axioms", "dual_numbers_f5.json"}, {"bim-bialgebroid", "f3c2.json"},
      {"bim-varsigma", "idempotent_monoid.json"}, {"bim-antipode", "idempotent_monoid.json"},
      {"bim-antipode", "pair_f5_dual_numbers.json"}, {"bim-fthm", "f3c2.json"}};
  auto tmp = std::filesystem::temp_directory_path();
  auto first = tmp / "duoidal_acceptance_a.json", second = tmp / "duoidal_acceptance_b.json";
  std::size_t certificates = 0;
  for (auto const& [verb, file] : runs) {
    std::string args = verb + " \"" + dir + "/" + file + "\" --seed 5";
    int c1 = run_cli(args, first), c2 = run_cli(args, second);
    std::string a = slurp(first), b = slurp(second);
    if (c1 != c2 || a != b || a.empty()) o.fail(verb + " " + file + " not byte-identical");
    if (c1 != 0 && c1 != 1) {
      o.fail(verb + " " + file + " exit " + std::to_string(c1));
      continue;
    }
    if (c1 != 1) continue;
    json body = json::parse(a);
    json src = json_io::parse_file(dir + "/" + file);
    if (verb == "span-is-groupoid") {
      SmallCategory A = json_io::category_from_json(src);
      auto const& cert = body["certificate"];
      SpanModule Q = json_io::module_from_json(A, cert["module"], "/certificate/module");
      auto q1 = Q.carrier().find(cert["collision"]["q1"].get<std::string>());
      auto q2 = Q.carrier().find(cert["collision"]["q2"].get<std::string>());
      auto x = A.arrows().find(cert["collision"]["a"].get<std::string>());
      bool ok = q1 && q2 && x && *q1 != *q2 && Q.check(A).all_passed() && Q(*q1, *x) == Q(*q2, *x);
      if (!ok) o.fail("groupoid certificate does not re-verify");
      ++certificates;
    } else if (verb == "bim-antipode") {
      Bialgebroid B = json_io::bialgebroid_from_json(PrimeField(*json_io::prime_of(src)), src);
      Vector w = body["kernel_witness"]["vector"].get<Vector>();
      if (!verify_kernel_witness(B, w)) o.fail("kernel witness does not re-verify");
      ++certificates;
    }
  }
  std::filesystem::remove(first);
  std::filesystem::remove(second);
  if (certificates < 2) o.fail("certificates not exercised");
  if (o.ok) {
    o.detail = std::to_string(runs.size()) + " commands byte-identical, " + std::to_string(certificates) +
               " certificates re-verified";
  }
  return o;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "duoidal axiom suite on random spans and bimodules", axiom_suite, kAxiomSeconds);
  ok &= report(2, "groupoid test via beta agrees with direct test", groupoid_agreement, kGroupoidSeconds);
  ok &= report(3, "fundamental theorem in span(X)", fundamental_theorem);
  ok &= report(4, "beta identities and contractions", beta_identities);
  ok &= report(5, "Hopf algebroid characterization", hopf_characterization, kHopfSeconds);
  ok &= report(6, "dual fundamental theorem", dual_fthm, kDualSeconds);
  ok &= report(7, "CLI determinism and certificate re-verification", determinism);
  std::cout << (ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return ok ? 0 : 1;
}
