#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "duoidal/algebra.hpp"
#include "duoidal/bialgebroid.hpp"
#include "duoidal/error.hpp"
#include "duoidal/linalg.hpp"
#include "duoidal/report.hpp"
#include "duoidal/small_category.hpp"
#include "duoidal/span.hpp"

namespace duoidal::json_io {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string at(const std::string& path) { return path.empty() ? "/" : path; }

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(at(path) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(at(path) + ": missing key '" + key + "'");
  return *it;
}

inline const json* optional_field(const json& j, const std::string& key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(at(path) + ": expected an array");
  return j;
}

inline std::string label(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(at(path) + ": expected a string");
  std::string s = j.get<std::string>();
  if (s.empty()) throw InputError(at(path) + ": empty label");
  if (s.find_first_of("(),.") != std::string::npos) {
    throw InputError(at(path) + ": label '" + s + "' contains one of the reserved characters ( ) , .");
  }
  return s;
}

inline std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(at(path) + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::size_t count(const json& j, const std::string& path) {
  std::int64_t v = integer(j, path);
  if (v < 0) throw InputError(at(path) + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

template <typename Fn>
auto wrap(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(at(path) + ": " + e.what());
  }
}

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

}  // namespace detail

inline json parse_text(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline json parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline std::optional<std::uint32_t> prime_of(const json& j) {
  const json* p = detail::optional_field(j, "prime");
  if (p == nullptr) return std::nullopt;
  std::int64_t v = detail::integer(*p, "/prime");
  if (v < 2 || v >= (std::int64_t{1} << 31)) throw InputError("/prime: out of range");
  return static_cast<std::uint32_t>(v);
}

// Spans and categories

inline ObjectSet objects_from_json(const json& j, const std::string& path = "") {
  std::string p = detail::child(path, "objects");
  const json& a = detail::array(detail::field(j, "objects", path), p);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < a.size(); ++i) labels.push_back(detail::label(a[i], detail::child(p, i)));
  return detail::wrap(p, [&] { return ObjectSet(std::move(labels)); });
}

inline SpanPtr arrows_from_json(const ObjectSet& X, const json& j, const std::string& path) {
  std::string p = detail::child(path, "arrows");
  const json& a = detail::array(detail::field(j, "arrows", path), p);
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string q = detail::child(p, i);
    std::string name = detail::label(detail::field(a[i], "name", q), q + "/name");
    std::string s = detail::label(detail::field(a[i], "src", q), q + "/src");
    std::string t = detail::label(detail::field(a[i], "tgt", q), q + "/tgt");
    if (!X.find(s)) throw InputError(q + "/src: unknown object '" + s + "'");
    if (!X.find(t)) throw InputError(q + "/tgt: unknown object '" + t + "'");
    arrows.emplace_back(name, s, t);
  }
  return detail::wrap(p, [&] { return Span::from_arrows(X, arrows); });
}

inline SpanPtr span_from_json(const json& j, const std::string& path = "") {
  return arrows_from_json(objects_from_json(j, path), j, path);
}

// Arrows, identities and composition over a given object set.
inline SmallCategory category_over(const ObjectSet& X, const json& j, const std::string& path) {
  SpanPtr A = arrows_from_json(X, j, path);
  std::string ip = detail::child(path, "identities");
  const json& ids = detail::field(j, "identities", path);
  if (!ids.is_object()) throw InputError(ip + ": expected an object");
  std::vector<std::size_t> id(X.size(), npos);
  for (auto it = ids.begin(); it != ids.end(); ++it) {
    auto x = X.find(it.key());
    if (!x) throw InputError(ip + ": unknown object '" + it.key() + "'");
    std::string arrow = detail::label(it.value(), detail::child(ip, it.key()));
    auto a = A->find(arrow);
    if (!a) throw InputError(detail::child(ip, it.key()) + ": unknown arrow '" + arrow + "'");
    id[*x] = *a;
  }
  for (std::size_t x = 0; x < X.size(); ++x)
    if (id[x] == npos) throw InputError(ip + ": missing identity for '" + X.label(x) + "'");
  std::string cp = detail::child(path, "compose");
  const json& comp = detail::array(detail::field(j, "compose", path), cp);
  std::vector<std::size_t> table(A->size() * A->size(), npos);
  for (std::size_t i = 0; i < comp.size(); ++i) {
    std::string q = detail::child(cp, i);
    auto get = [&](const char* key) {
      std::string n = detail::label(detail::field(comp[i], key, q), q + "/" + key);
      auto a = A->find(n);
      if (!a) throw InputError(q + "/" + key + ": unknown arrow '" + n + "'");
      return *a;
    };
    std::size_t f = get("f"), g = get("g"), fg = get("fg");
    if (table[f * A->size() + g] != npos) throw InputError(q + ": composite given twice");
    table[f * A->size() + g] = fg;
  }
  return detail::wrap(path, [&] { return SmallCategory(A, std::move(id), std::move(table)); });
}

inline SmallCategory category_from_json(const json& j, const std::string& path = "") {
  return category_over(objects_from_json(j, path), j, path);
}

// {"name", "arrows", "action":[{"q","a","qa"}], "grade"?: {q: a}}
inline SpanModule module_from_json(const SmallCategory& A, const json& j, const std::string& path) {
  SpanPtr Q = arrows_from_json(A.objects(), j, path);
  std::string ap = detail::child(path, "action");
  const json& act = detail::array(detail::field(j, "action", path), ap);
  std::vector<std::size_t> table(Q->size() * A.size(), npos);
  for (std::size_t i = 0; i < act.size(); ++i) {
    std::string p = detail::child(ap, i);
    auto get = [&](const char* key, const Span& S) {
      std::string n = detail::label(detail::field(act[i], key, p), p + "/" + key);
      auto a = S.find(n);
      if (!a) throw InputError(p + "/" + key + ": unknown element '" + n + "'");
      return *a;
    };
    std::size_t q = get("q", *Q), a = get("a", A.arrows()), qa = get("qa", *Q);
    if (table[q * A.size() + a] != npos) throw InputError(p + ": action given twice");
    table[q * A.size() + a] = qa;
  }
  return detail::wrap(path, [&] { return SpanModule(A, Q, std::move(table)); });
}

inline std::optional<std::vector<std::size_t>> grade_from_json(const Span& Q, const Span& A, const json& j,
                                                               const std::string& path) {
  const json* g = detail::optional_field(j, "grade");
  if (g == nullptr) return std::nullopt;
  std::string gp = detail::child(path, "grade");
  if (!g->is_object()) throw InputError(gp + ": expected an object");
  std::vector<std::size_t> c(Q.size(), npos);
  for (auto it = g->begin(); it != g->end(); ++it) {
    auto q = Q.find(it.key());
    if (!q) throw InputError(gp + ": unknown element '" + it.key() + "'");
    std::string n = detail::label(it.value(), detail::child(gp, it.key()));
    auto a = A.find(n);
    if (!a) throw InputError(detail::child(gp, it.key()) + ": unknown arrow '" + n + "'");
    c[*q] = *a;
  }
  for (std::size_t q = 0; q < Q.size(); ++q)
    if (c[q] == npos) throw InputError(gp + ": no grade for '" + Q.name(q) + "'");
  return c;
}

struct NamedModule {
  std::string name;
  SpanModule module;
  std::optional<std::vector<std::size_t>> grade;
};

inline std::vector<NamedModule> modules_from_json(const SmallCategory& A, const json& j) {
  std::vector<NamedModule> out;
  const json* m = detail::optional_field(j, "modules");
  if (m == nullptr) return out;
  detail::array(*m, "/modules");
  for (std::size_t i = 0; i < m->size(); ++i) {
    std::string p = detail::child("/modules", i);
    std::string name = "module#" + std::to_string(i);
    if (const json* n = detail::optional_field((*m)[i], "name")) name = detail::label(*n, p + "/name");
    SpanModule Q = module_from_json(A, (*m)[i], p);
    auto c = grade_from_json(Q.carrier(), A.arrows(), (*m)[i], p);
    out.push_back({name, std::move(Q), std::move(c)});
  }
  return out;
}

// {"slices":[{"name", "elements":[{"name","anchor"}]}]}
inline std::vector<SliceObject> slices_from_json(const ObjectSet& X, const json& j) {
  std::vector<SliceObject> out;
  const json* s = detail::optional_field(j, "slices");
  if (s == nullptr) return out;
  detail::array(*s, "/slices");
  for (std::size_t i = 0; i < s->size(); ++i) {
    std::string p = detail::child("/slices", i);
    const json& el = detail::array(detail::field((*s)[i], "elements", p), p + "/elements");
    std::vector<std::string> names;
    std::vector<std::size_t> anchor;
    for (std::size_t k = 0; k < el.size(); ++k) {
      std::string q = detail::child(p + "/elements", k);
      names.push_back(detail::label(detail::field(el[k], "name", q), q + "/name"));
      std::string x = detail::label(detail::field(el[k], "anchor", q), q + "/anchor");
      auto xi = X.find(x);
      if (!xi) throw InputError(q + "/anchor: unknown object '" + x + "'");
      anchor.push_back(*xi);
    }
    out.push_back(detail::wrap(p, [&] { return SliceObject(X, std::move(names), anchor); }));
  }
  return out;
}

// Spans listed under "spans", each {"name"?, "arrows"}, over the file's
// objects; a plain span file yields one span.
inline std::pair<ObjectSet, std::vector<SpanPtr>> spans_from_json(const json& j) {
  ObjectSet X = objects_from_json(j);
  std::vector<SpanPtr> out;
  if (const json* s = detail::optional_field(j, "spans")) {
    detail::array(*s, "/spans");
    for (std::size_t i = 0; i < s->size(); ++i) out.push_back(arrows_from_json(X, (*s)[i], detail::child("/spans", i)));
  } else if (detail::optional_field(j, "arrows") != nullptr) {
    out.push_back(arrows_from_json(X, j, ""));
  }
  return {X, out};
}

// {"total": {arrows, identities, compose}, "grade": {b: a}} over the same
// objects as the base category.
inline std::optional<ComoduleMonoidSpan> comodule_monoid_from_json(const SmallCategory& A, const json& j) {
  const json* t = detail::optional_field(j, "total");
  if (t == nullptr) return std::nullopt;
  SmallCategory B = category_over(A.objects(), *t, "/total");
  auto c = grade_from_json(B.arrows(), A.arrows(), *t, "/total");
  if (!c) throw InputError("/total: missing key 'grade'");
  return ComoduleMonoidSpan(B, A, *c);
}

// Linear algebra

inline Matrix matrix_from_json(PrimeField F, const json& j, const std::string& path) {
  detail::array(j, path);
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    std::string p = detail::child(path, r);
    detail::array(j[r], p);
    std::vector<std::int64_t> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(detail::integer(j[r][c], detail::child(p, c)));
    if (!rows.empty() && row.size() != rows.front().size()) throw InputError(p + ": ragged matrix");
    rows.push_back(std::move(row));
  }
  return detail::wrap(path, [&] { return Matrix::from_rows(F, rows); });
}

inline Matrix matrix_from_json(PrimeField F, const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  Matrix m = j.empty() ? Matrix(F, rows, cols) : matrix_from_json(F, j, path);
  if (m.rows() != rows || m.cols() != cols) {
    throw InputError(path + ": expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
  return m;
}

inline Vector vector_from_json(PrimeField F, const json& j, std::size_t n, const std::string& path) {
  detail::array(j, path);
  if (j.size() != n) throw InputError(path + ": expected " + std::to_string(n) + " entries");
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = F.reduce(detail::integer(j[i], detail::child(path, i)));
  return v;
}

// {"dim", "mul": [[coeffs of e_i e_j]], "unit": coeffs}
inline FDAlgebra algebra_from_json(PrimeField F, const json& j, const std::string& path) {
  std::size_t n = detail::count(detail::field(j, "dim", path), path + "/dim");
  std::string mp = path + "/mul";
  const json& mul = detail::array(detail::field(j, "mul", path), mp);
  if (mul.size() != n) throw InputError(mp + ": expected " + std::to_string(n) + " rows");
  std::vector<Vector> products;
  for (std::size_t i = 0; i < n; ++i) {
    detail::array(mul[i], detail::child(mp, i));
    if (mul[i].size() != n) throw InputError(detail::child(mp, i) + ": expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k)
      products.push_back(vector_from_json(F, mul[i][k], n, detail::child(detail::child(mp, i), k)));
  }
  Vector unit = vector_from_json(F, detail::field(j, "unit", path), n, path + "/unit");
  return detail::wrap(path, [&] { return FDAlgebra(F, n, std::move(products), std::move(unit)); });
}

// {"dim", "left": [matrix per basis r], "right": [...]}
inline Bimodule bimodule_from_json(const FDAlgebra& R, const json& j, const std::string& path) {
  std::size_t m = detail::count(detail::field(j, "dim", path), path + "/dim");
  auto mats = [&](const char* key) {
    std::string p = path + "/" + key;
    const json& a = detail::array(detail::field(j, key, path), p);
    if (a.size() != R.dim()) throw InputError(p + ": expected one matrix per basis element of R");
    std::vector<Matrix> out;
    for (std::size_t r = 0; r < a.size(); ++r)
      out.push_back(matrix_from_json(R.field(), a[r], m, m, detail::child(p, r)));
    return out;
  };
  auto l = mats("left");
  auto r = mats("right");
  return detail::wrap(path, [&] { return Bimodule(R, m, std::move(l), std::move(r)); });
}

// The algebra block is either under "algebra" or at top level.
inline const json& algebra_block(const json& j, std::string& path) {
  if (const json* a = detail::optional_field(j, "algebra")) {
    path = "/algebra";
    return *a;
  }
  path = "";
  return j;
}

inline std::vector<std::string> basis_names(const json& j, std::size_t n, const std::string& path) {
  std::vector<std::string> out;
  const json* b = detail::optional_field(j, "basis");
  if (b == nullptr) return out;
  detail::array(*b, path + "/basis");
  if (b->size() != n) throw InputError(path + "/basis: expected " + std::to_string(n) + " names");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(*b)[i].is_string()) throw InputError(detail::child(path + "/basis", i) + ": expected a string");
    out.push_back((*b)[i].get<std::string>());
  }
  return out;
}

// Algebra block for A, optional "base" algebra R (default the field), and
// "s", "t", "Delta", "eps" as row-major matrices.
inline Bialgebroid bialgebroid_from_json(PrimeField F, const json& j) {
  std::string ap;
  const json& a = algebra_block(j, ap);
  FDAlgebra A = algebra_from_json(F, a, ap);
  FDAlgebra R = algebras::field(F);
  if (const json* b = detail::optional_field(j, "base")) R = algebra_from_json(F, *b, "/base");
  std::size_t d = A.dim(), n = R.dim();
  Matrix s = matrix_from_json(F, detail::field(j, "s", ""), d, n, "/s");
  Matrix t = matrix_from_json(F, detail::field(j, "t", ""), d, n, "/t");
  Matrix Delta = matrix_from_json(F, detail::field(j, "Delta", ""), "/Delta");
  Matrix eps = matrix_from_json(F, detail::field(j, "eps", ""), n, d, "/eps");
  auto names = basis_names(a, d, ap);
  return detail::wrap("", [&] { return Bialgebroid(R, A, s, t, Delta, eps, names); });
}

// Output

inline json to_json(const Matrix& m) {
  json out = json::array();
  for (auto const& row : m.to_rows()) out.push_back(row);
  return out;
}

inline json to_json(const Vector& v) { return json(v); }

inline json to_json(const Report& r) {
  json out = json::array();
  for (auto const& e : r.entries()) {
    json item;
    item["diagram"] = e.name;
    item["status"] = e.passed ? "pass" : "fail";
    if (!e.passed) item["witness"] = e.witness;
    out.push_back(std::move(item));
  }
  return out;
}

inline json arrows_to_json(const Span& S) {
  json a = json::array();
  for (std::size_t i = 0; i < S.size(); ++i) {
    json e;
    e["name"] = S.name(i);
    e["src"] = S.objects().label(S.src(i));
    e["tgt"] = S.objects().label(S.tgt(i));
    a.push_back(std::move(e));
  }
  return a;
}

inline json to_json(const Span& S) {
  json out;
  out["objects"] = S.objects().labels();
  out["arrows"] = arrows_to_json(S);
  return out;
}

inline json category_body(const SmallCategory& A) {
  json out;
  out["arrows"] = arrows_to_json(A.arrows());
  json ids = json::object();
  for (std::size_t x = 0; x < A.objects().size(); ++x) ids[A.objects().label(x)] = A.name(A.identity(x));
  out["identities"] = ids;
  json comp = json::array();
  for (std::size_t f = 0; f < A.size(); ++f)
    for (std::size_t g = 0; g < A.size(); ++g)
      if (auto fg = A.compose(f, g)) comp.push_back(json{{"f", A.name(f)}, {"g", A.name(g)}, {"fg", A.name(*fg)}});
  out["compose"] = comp;
  return out;
}

inline json to_json(const SmallCategory& A) {
  json out;
  out["objects"] = A.objects().labels();
  json body = category_body(A);
  for (auto& [k, v] : body.items()) out[k] = v;
  return out;
}

inline json to_json(const SmallCategory& A, const SpanModule& Q) {
  json out;
  out["arrows"] = arrows_to_json(Q.carrier());
  json act = json::array();
  for (std::size_t q = 0; q < Q.size(); ++q)
    for (std::size_t a = 0; a < A.size(); ++a)
      if (auto qa = Q.act(q, a))
        act.push_back(json{{"q", Q.carrier().name(q)}, {"a", A.name(a)}, {"qa", Q.carrier().name(*qa)}});
  out["action"] = act;
  return out;
}

inline json to_json(const SmallCategory& A, const HopfModuleSpan& X) {
  json out = to_json(A, X.module());
  json g = json::object();
  for (std::size_t q = 0; q < X.size(); ++q) g[X.carrier().name(q)] = A.name(X.grade(q));
  out["grade"] = g;
  return out;
}

inline json to_json(const FDAlgebra& A) {
  json out;
  out["dim"] = A.dim();
  json mul = json::array();
  for (std::size_t i = 0; i < A.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < A.dim(); ++k) row.push_back(A.product(i, k));
    mul.push_back(row);
  }
  out["mul"] = mul;
  out["unit"] = A.unit();
  return out;
}

inline json to_json(const FDAlgebra& R, const Bimodule& M) {
  json out;
  out["dim"] = M.dim();
  json l = json::array(), r = json::array();
  for (std::size_t i = 0; i < R.dim(); ++i) {
    l.push_back(to_json(M.left(i)));
    r.push_back(to_json(M.right(i)));
  }
  out["left"] = l;
  out["right"] = r;
  return out;
}

// Δ is written in A⊗A coordinates through the chosen section.
inline json to_json(const Bialgebroid& B) {
  json out;
  out["prime"] = B.field().prime();
  out["base"] = to_json(B.base());
  json a = to_json(B.algebra());
  a["basis"] = B.basis_names();
  out["algebra"] = a;
  out["s"] = to_json(B.s());
  out["t"] = to_json(B.t());
  out["Delta"] = to_json(B.Delta_raw());
  out["eps"] = to_json(B.eps());
  return out;
}

}  // namespace duoidal::json_io
