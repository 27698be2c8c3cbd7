#pragma once

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "duoidal/duoidal.hpp"
#include "duoidal/json_io.hpp"

namespace duoidal::cli {

using json = json_io::json;

inline const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v{"span-axioms",  "span-bimonoid",  "span-is-groupoid", "span-beta",
                                          "span-counterexample", "span-fthm", "span-galois", "bim-axioms",
                                          "bim-bialgebroid", "bim-varsigma", "bim-antipode", "bim-fthm"};
  return v;
}

struct RunConfig {
  std::string verb;
  std::string input;
  std::optional<std::uint32_t> prime;
  std::uint64_t seed = 1;
  std::size_t corpus_size = 20;
  std::string out;
  std::string u;
  std::string v;
};

struct Outcome {
  int code = 0;
  json body;
};

namespace detail {

inline PrimeField resolve_prime(const RunConfig& cfg, const json& file) {
  auto from_file = json_io::prime_of(file);
  if (from_file && cfg.prime && *from_file != *cfg.prime) {
    throw InputError("--prime " + std::to_string(*cfg.prime) + " conflicts with prime " +
                     std::to_string(*from_file) + " in " + cfg.input);
  }
  std::uint32_t p = from_file ? *from_file : cfg.prime.value_or(101);
  try {
    return PrimeField(p);
  } catch (const Error& e) {
    throw InputError(std::string("prime: ") + e.what());
  }
}

inline int verdict(bool ok) { return ok ? 0 : 1; }

inline json certificate_json(const SmallCategory& A, const BetaCertificate& c) {
  json out;
  out["source"] = c.source;
  out["module"] = json_io::to_json(A, c.module);
  const Span& S = c.module.carrier();
  if (c.collision) {
    auto [q1, q2, a] = *c.collision;
    out["collision"] = json{{"q1", S.name(q1)}, {"q2", S.name(q2)}, {"a", A.name(a)}};
  }
  if (c.missed) out["missed"] = json{{"q", S.name(c.missed->first)}, {"a", A.name(c.missed->second)}};
  out["verified"] = verify_beta_certificate(A, c);
  return out;
}

inline std::size_t object_index(const SmallCategory& A, const std::string& label, const char* flag) {
  auto x = A.objects().find(label);
  if (!x) throw InputError(std::string(flag) + ": unknown object '" + label + "'");
  return *x;
}

inline Outcome span_axioms(const RunConfig& cfg, const json& file) {
  auto [X, spans] = json_io::spans_from_json(file);
  bool generated = spans.empty();
  if (generated) {
    random::Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.corpus_size; ++i)
      spans.push_back(random::random_span(X, 5, rng, "m" + std::to_string(i) + "_"));
  }
  Report r = check_duoidal_axioms(X, spans);
  json body;
  body["objects"] = X.size();
  body["spans"] = spans.size();
  body["generated"] = generated;
  body["passed"] = r.all_passed();
  body["report"] = json_io::to_json(r);
  return {verdict(r.all_passed()), body};
}

inline Outcome span_bimonoid(const json& file) {
  SmallCategory A = json_io::category_from_json(file);
  Report r = check_bimonoid(A);
  json body;
  body["bimonoid"] = r.all_passed();
  body["report"] = json_io::to_json(r);
  return {verdict(r.all_passed()), body};
}

inline Outcome span_is_groupoid(const json& file) {
  SmallCategory A = json_io::category_from_json(file);
  GroupoidVerdict direct = is_groupoid_direct(A);
  GroupoidVerdict beta = is_groupoid_via_beta(A);
  json body;
  body["groupoid"] = direct.groupoid;
  if (direct.groupoid) {
    json inv = json::object();
    for (std::size_t a = 0; a < A.size(); ++a) inv[A.name(a)] = A.name(direct.inverse[a]);
    body["inverses"] = inv;
  } else {
    body["non_invertible"] = A.name(*direct.non_invertible);
    body["non_invertible_verified"] = verify_non_invertible(A, *direct.non_invertible);
  }
  body["beta_groupoid"] = beta.groupoid;
  if (beta.certificate) body["certificate"] = certificate_json(A, *beta.certificate);
  body["agree"] = direct.groupoid == beta.groupoid;
  return {verdict(direct.groupoid && beta.groupoid), body};
}

inline Outcome span_beta(const json& file) {
  SmallCategory A = json_io::category_from_json(file);
  std::vector<std::pair<std::string, SpanModule>> modules;
  modules.emplace_back("A", SpanModule::regular(A));
  for (auto& m : json_io::modules_from_json(A, file)) modules.emplace_back(m.name, m.module);
  json items = json::array();
  bool ok = true;
  for (auto const& [label, Q] : modules) {
    ExplicitBeta b = beta_on_module(A, Q);
    Report lemmas = check_beta_lemmas(A, Q, A.arrows_ptr());
    json item;
    item["module"] = label;
    item["size"] = Q.size();
    item["bijective"] = b.report.bijective();
    if (auto c = b.certificate(label, Q)) item["certificate"] = certificate_json(A, *c);
    item["lemmas"] = json_io::to_json(lemmas);
    ok = ok && b.report.bijective() && lemmas.all_passed();
    items.push_back(std::move(item));
  }
  json body;
  body["modules"] = items;
  body["all_bijective"] = ok;
  return {verdict(ok), body};
}

inline Outcome span_counterexample(const RunConfig& cfg, const json& file) {
  SmallCategory A = json_io::category_from_json(file);
  json body;
  std::size_t u, v;
  if (!cfg.u.empty() || !cfg.v.empty()) {
    if (cfg.u.empty() || cfg.v.empty()) throw InputError("--u and --v must be given together");
    u = object_index(A, cfg.u, "--u");
    v = object_index(A, cfg.v, "--v");
  } else {
    auto inst = counterexample_instances(A);
    if (inst.empty()) {
      body["applicable"] = false;
      body["groupoid"] = is_groupoid_direct(A).groupoid;
      return {0, body};
    }
    std::tie(u, v) = inst.front();
  }
  CounterexampleModule C = [&] {
    try {
      return counterexample_module(A, u, v);
    } catch (const PreconditionError& e) {
      throw InputError(e.what());
    }
  }();
  const Span& S = C.module.carrier();
  body["applicable"] = true;
  body["u"] = A.objects().label(u);
  body["v"] = A.objects().label(v);
  body["module"] = json_io::to_json(A, C.module);
  auto [q1, q2, b] = C.collision;
  body["collision"] = json{{"q1", S.name(q1)}, {"q2", S.name(q2)}, {"a", A.name(b)}};
  BetaCertificate cert{"counterexample", C.module, C.collision, std::nullopt};
  body["verified"] = verify_beta_certificate(A, cert);
  ExplicitBeta beta = beta_on_module(A, C.module);
  body["beta_bijective"] = beta.report.bijective();
  if (auto g = find_hopf_grade(A, C.module)) {
    json gj = json::object();
    for (std::size_t q = 0; q < S.size(); ++q) gj[S.name(q)] = A.name((*g)[q]);
    body["hopf_grade"] = gj;
  } else {
    body["hopf_grade"] = nullptr;
  }
  return {1, body};
}

inline Outcome span_fthm(const RunConfig& cfg, const json& file) {
  SmallCategory A = json_io::category_from_json(file);
  std::vector<HopfModuleSpan> corpus;
  for (auto& m : json_io::modules_from_json(A, file)) {
    if (!m.grade) continue;
    try {
      corpus.emplace_back(A, m.module, *m.grade);
    } catch (const ValidationError& e) {
      throw InputError("module '" + m.name + "': " + e.what());
    }
  }
  std::vector<SliceObject> slices = json_io::slices_from_json(A.objects(), file);
  random::Rng rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.corpus_size; ++i) {
    corpus.push_back(random::random_hopf_module(A, 4, rng));
    slices.push_back(random::random_slice(A.objects(), 0, 4, rng));
  }
  Report r = verify_fthm(A, corpus, slices);
  GroupoidVerdict g = is_groupoid_direct(A);
  if (g.groupoid) {
    r.record("counit inverse formula", true);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      CounitReport cr = fthm_counit(A, corpus[i]);
      if (!cr.inverse_verified) r.record("counit inverse formula", false, "Hopf module #" + std::to_string(i));
    }
  }
  Report lemma = [&] {
    Report out;
    auto C = coinvariants(A, HopfModuleSpan(A, SpanModule::regular(A), ComoduleMonoidSpan::trivial(A).grades()));
    out.add("coinvariants of A are the identities", C.slice.size() == A.objects().size(),
            std::to_string(C.slice.size()) + " coinvariants for " + std::to_string(A.objects().size()) + " objects");
    return out;
  }();
  r.append(lemma);
  json body;
  body["groupoid"] = g.groupoid;
  body["hopf_modules"] = corpus.size();
  body["slices"] = slices.size();
  body["fthm_holds"] = r.passed("(iii) fundamental theorem");
  body["report"] = json_io::to_json(r);
  return {verdict(r.all_passed()), body};
}

inline Outcome span_galois(const RunConfig& cfg, const json& file) {
  SmallCategory A = json_io::category_from_json(file);
  auto cm = json_io::comodule_monoid_from_json(A, file);
  ComoduleMonoidSpan B = cm ? *cm : ComoduleMonoidSpan::trivial(A);
  std::vector<std::pair<std::string, SpanModule>> corpus;
  for (auto& m : json_io::modules_from_json(B.total(), file)) corpus.emplace_back(m.name, m.module);
  random::Rng rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.corpus_size; ++i)
    corpus.emplace_back("random#" + std::to_string(i), random::random_module(B.total(), 3, rng));
  Verdict v = is_galois(B, corpus);
  json body;
  body["galois"] = v.holds;
  if (!v.holds) body["witness"] = v.witness;
  body["corpus"] = corpus.size() + 1;
  body["report"] = json_io::to_json(v.report);
  return {verdict(v.holds), body};
}

inline FDAlgebra base_algebra(PrimeField F, const json& file) {
  std::string path;
  const json& block = json_io::algebra_block(file, path);
  return json_io::algebra_from_json(F, block, path);
}

inline Outcome bim_axioms(const RunConfig& cfg, const json& file, PrimeField F) {
  FDAlgebra R = base_algebra(F, file);
  BimDuoidal C = [&] {
    try {
      return BimDuoidal(R);
    } catch (const ValidationError& e) {
      throw InputError(e.what());
    }
  }();
  std::vector<BimPtr> modules;
  if (const json* b = json_io::detail::optional_field(file, "bimodules")) {
    json_io::detail::array(*b, "/bimodules");
    for (std::size_t i = 0; i < b->size(); ++i)
      modules.push_back(make_bimodule(json_io::bimodule_from_json(R, (*b)[i], "/bimodules/" + std::to_string(i))));
  }
  bool generated = modules.empty();
  if (generated) {
    random::BimRng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.corpus_size; ++i) modules.push_back(make_bimodule(random::random_bimodule(R, 3, rng)));
  }
  Report r = check_duoidal_axioms_bim(C, modules);
  for (std::size_t i = 0; i < modules.size(); ++i) {
    Report j = check_J_module(C, modules[i]);
    if (!j.passed("criteria agree")) r.record("J-module criteria agree", false, "bimodule #" + std::to_string(i));
    Report id = check_idempotent_criteria(C, modules[i]);
    if (!id.all_passed()) r.record("idempotent criteria", false, "bimodule #" + std::to_string(i));
  }
  r.record("J-module criteria agree", true);
  r.record("idempotent criteria", true);
  json body;
  body["prime"] = F.prime();
  body["dim_R"] = R.dim();
  body["bimodules"] = modules.size();
  body["generated"] = generated;
  body["passed"] = r.all_passed();
  body["report"] = json_io::to_json(r);
  return {verdict(r.all_passed()), body};
}

inline Bialgebroid load_bialgebroid(const json& file, PrimeField F) { return json_io::bialgebroid_from_json(F, file); }

inline Outcome bim_bialgebroid(const json& file, PrimeField F) {
  std::string ap;
  const json& a = json_io::algebra_block(file, ap);
  FDAlgebra A = json_io::algebra_from_json(F, a, ap);
  FDAlgebra R = algebras::field(F);
  if (const json* b = json_io::detail::optional_field(file, "base")) R = json_io::algebra_from_json(F, *b, "/base");
  std::size_t d = A.dim(), n = R.dim();
  Matrix s = json_io::matrix_from_json(F, json_io::detail::field(file, "s", ""), d, n, "/s");
  Matrix t = json_io::matrix_from_json(F, json_io::detail::field(file, "t", ""), d, n, "/t");
  Matrix Delta = json_io::matrix_from_json(F, json_io::detail::field(file, "Delta", ""), "/Delta");
  Matrix eps = json_io::matrix_from_json(F, json_io::detail::field(file, "eps", ""), n, d, "/eps");
  auto names = json_io::basis_names(a, d, ap);
  Bialgebroid B = [&] {
    try {
      return Bialgebroid(R, A, s, t, Delta, eps, names, false);
    } catch (const Error& e) {
      throw InputError(e.what());
    }
  }();
  Report r = B.check();
  json body;
  body["prime"] = F.prime();
  body["dim_R"] = n;
  body["dim_A"] = d;
  body["dim_AA"] = B.AA().quotient.dim();
  body["bialgebroid"] = r.all_passed();
  body["report"] = json_io::to_json(r);
  return {verdict(r.all_passed()), body};
}

inline json kernel_json(const Bialgebroid& B, const Vector& w) {
  json k;
  k["vector"] = w;
  k["terms"] = describe_tensor(B, w);
  k["verified"] = verify_kernel_witness(B, w);
  return k;
}

inline Outcome bim_varsigma(const RunConfig& cfg, const json& file, PrimeField F) {
  Bialgebroid B = load_bialgebroid(file, F);
  VarsigmaHat vh = varsigma_hat(B);
  json body;
  body["prime"] = F.prime();
  body["dim_star"] = vh.star.dim();
  body["dim_AA"] = B.AA().quotient.dim();
  body["rank"] = vh.report.rank;
  body["well_defined"] = vh.report.well_defined;
  body["invertible"] = vh.report.invertible();
  if (vh.report.kernel_witness) body["kernel_witness"] = kernel_json(B, vh.star.lift(*vh.report.kernel_witness));
  std::vector<std::pair<std::string, RightComoduleBim>> comodules{{"A", regular_comodule(B)},
                                                                  {"I•A", enveloping_comodule(B)}};
  random::BimRng rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.corpus_size; ++i) {
    BimPtr M = make_bimodule(random::random_bimodule(B.base(), 3, rng));
    comodules.emplace_back("M" + std::to_string(i) + "•A", cofree_comodule(B, M));
  }
  json items = json::array();
  bool consistent = true;
  for (auto const& [name, Q] : comodules) {
    LinearMapReport r = varsigma(B, Q);
    items.push_back(json{{"comodule", name}, {"dim", Q.module->dim()}, {"rank", r.rank}, {"invertible", r.invertible()}});
    if (name == "I•A" && r.invertible() != vh.report.invertible()) consistent = false;
  }
  body["comodules"] = items;
  body["enveloping_agrees"] = consistent;
  return {verdict(vh.report.invertible() && consistent), body};
}

inline Outcome bim_antipode(const json& file, PrimeField F) {
  Bialgebroid B = load_bialgebroid(file, F);
  AntipodeResult res = compute_antipode(B);
  json body;
  body["prime"] = F.prime();
  body["hopf"] = res.hopf;
  body["rank"] = res.varsigma.report.rank;
  body["dim"] = res.varsigma.star.dim();
  if (!res.hopf) {
    body["kernel_witness"] = kernel_json(B, *res.kernel_witness);
    return {1, body};
  }
  Report ax = check_antipode_axioms(B, *res.S);
  Report id = check_translation_identities(B, res);
  body["antipode"] = json_io::to_json(*res.S);
  body["axioms"] = json_io::to_json(ax);
  body["identities"] = json_io::to_json(id);
  return {verdict(ax.all_passed() && id.all_passed()), body};
}

inline Outcome bim_fthm(const RunConfig& cfg, const json& file, PrimeField F) {
  Bialgebroid B = load_bialgebroid(file, F);
  AntipodeResult res = compute_antipode(B);
  json body;
  body["prime"] = F.prime();
  body["hopf"] = res.hopf;
  if (!res.hopf) {
    body["kernel_witness"] = kernel_json(B, *res.kernel_witness);
    return {1, body};
  }
  random::BimRng rng(cfg.seed);
  std::vector<BimPtr> rmods{make_bimodule(regular_bimodule(B.base())), make_bimodule(zero_bimodule(B.base()))};
  for (std::size_t i = 0; i < cfg.corpus_size; ++i)
    rmods.push_back(make_bimodule(random::random_symmetric_bimodule(B.base(), 3, rng)));
  std::vector<HopfModuleBim> hopf;
  for (auto const& M : rmods) {
    HopfModuleBim X = comparison_G(B, M);
    hopf.push_back(X.dim() == 0 ? X : transport(B, X, random::random_invertible(F, X.dim(), rng)));
  }
  Report r = dual_fthm_check(B, rmods, hopf);
  json dims = json::array();
  for (auto const& M : rmods) {
    DualFthmLeg c = dual_counit(B, M);
    dims.push_back(json::array({c.dims[0], c.dims[1], c.dims[2]}));
  }
  body["r_modules"] = rmods.size();
  body["hopf_modules"] = hopf.size();
  body["round_trip_dims"] = dims;
  body["report"] = json_io::to_json(r);
  return {verdict(r.all_passed()), body};
}

inline Outcome dispatch(const RunConfig& cfg) {
  json file = json_io::parse_file(cfg.input);
  const std::string& v = cfg.verb;
  if (v.rfind("bim-", 0) == 0) {
    PrimeField F = resolve_prime(cfg, file);
    if (v == "bim-axioms") return bim_axioms(cfg, file, F);
    if (v == "bim-bialgebroid") return bim_bialgebroid(file, F);
    if (v == "bim-varsigma") return bim_varsigma(cfg, file, F);
    if (v == "bim-antipode") return bim_antipode(file, F);
    return bim_fthm(cfg, file, F);
  }
  resolve_prime(cfg, file);
  if (v == "span-axioms") return span_axioms(cfg, file);
  if (v == "span-bimonoid") return span_bimonoid(file);
  if (v == "span-is-groupoid") return span_is_groupoid(file);
  if (v == "span-beta") return span_beta(file);
  if (v == "span-counterexample") return span_counterexample(cfg, file);
  if (v == "span-fthm") return span_fthm(cfg, file);
  return span_galois(cfg, file);
}

inline void emit(const RunConfig& cfg, const json& body, std::ostream& out) {
  std::string text = body.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError(cfg.out + ": cannot open for writing");
  f << text;
}

}  // namespace detail

// Runs one command; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for duoidal categories of spans and bimodules"};
  RunConfig cfg;
  std::uint32_t prime = 0;
  app.add_option("verb", cfg.verb, "Command")->required()->check(CLI::IsMember(verbs()));
  app.add_option("input", cfg.input, "Input JSON file")->required();
  auto* prime_opt = app.add_option("--prime", prime, "Prime characteristic for bimodule commands");
  app.add_option("--seed", cfg.seed, "Seed for generated corpora")->capture_default_str();
  app.add_option("--corpus-size", cfg.corpus_size, "Number of generated corpus items")->capture_default_str();
  app.add_option("--out", cfg.out, "Write the report to this file instead of stdout");
  app.add_option("--u", cfg.u, "span-counterexample: object u");
  app.add_option("--v", cfg.v, "span-counterexample: object v");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (*prime_opt) cfg.prime = prime;
  json body;
  body["verb"] = cfg.verb;
  body["input"] = cfg.input;
  int code = 0;
  try {
    Outcome o = detail::dispatch(cfg);
    for (auto& [k, v] : o.body.items()) body[k] = v;
    code = o.code;
    body["exit"] = code;
    detail::emit(cfg, body, out);
  } catch (const std::exception& e) {
    body["error"] = e.what();
    body["exit"] = 2;
    err << "error: " << e.what() << "\n";
    try {
      detail::emit(cfg, body, out);
    } catch (const std::exception&) {
    }
    return 2;
  }
  return code;
}

}  // namespace duoidal::cli
