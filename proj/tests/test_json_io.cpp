#include <catch_amalgamated.hpp>

#include "duoidal/bialgebroid.hpp"
#include "duoidal/json_io.hpp"
#include "duoidal/span_catalog.hpp"

using namespace duoidal;
using json_io::json;

namespace {

std::string data(const std::string& name) { return std::string(DUOIDAL_DATA_DIR) + "/" + name; }

std::string input_error(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("categories round trip", "[json]") {
  std::size_t checked = 0;
  for (auto const& [name, A] : catalog::standard_corpus()) {
    INFO(name);
    json j = json_io::to_json(A);
    bool reserved = false;
    for (std::size_t a = 0; a < A.size(); ++a) reserved |= A.name(a).find_first_of("(),.") != std::string::npos;
    if (reserved) {
      CHECK_THROWS_AS(json_io::category_from_json(j), InputError);
      continue;
    }
    SmallCategory B = json_io::category_from_json(json::parse(j.dump()));
    CHECK(A == B);
    ++checked;
  }
  CHECK(checked >= 70);
}

TEST_CASE("bialgebroids round trip", "[json]") {
  PrimeField F(5);
  for (auto const& B : {bialgebroids::cyclic_group_algebra(F, 3), bialgebroids::idempotent_monoid_algebra(F),
                        bialgebroids::pair_bialgebroid(algebras::dual_numbers(F))}) {
    json j = json_io::to_json(B);
    CHECK(json_io::prime_of(j) == 5u);
    Bialgebroid C = json_io::bialgebroid_from_json(F, j);
    CHECK(C.s() == B.s());
    CHECK(C.t() == B.t());
    CHECK(C.eps() == B.eps());
    CHECK(C.Delta() == B.Delta());
    CHECK(C.basis_names() == B.basis_names());
    CHECK(C.algebra() == B.algebra());
  }
}

TEST_CASE("sample files load", "[json]") {
  for (auto const* f : {"c2.json", "s3.json", "walking_arrow.json", "indiscrete2.json", "idempotent_monoid_category.json",
                        "c2xc2_over_c2.json"}) {
    INFO(f);
    json j = json_io::parse_file(data(f));
    SmallCategory A = json_io::category_from_json(j);
    CHECK(A.check_laws().all_passed());
    auto mods = json_io::modules_from_json(A, j);
    for (auto const& m : mods) CHECK(m.module.check(A).all_passed());
    json_io::slices_from_json(A.objects(), j);
    json_io::comodule_monoid_from_json(A, j);
  }
  json w = json_io::parse_file(data("walking_arrow.json"));
  SmallCategory W = json_io::category_from_json(w);
  auto mods = json_io::modules_from_json(W, w);
  REQUIRE_FALSE(mods.empty());
  CHECK(mods[0].module.size() == 3);
  CHECK(json_io::slices_from_json(W.objects(), w).size() == 1);
  auto [X, spans] = json_io::spans_from_json(json_io::parse_file(data("spans_xy.json")));
  CHECK(X.size() == 2);
  CHECK(spans.size() >= 2);
  for (auto const* f : {"f3c2.json", "idempotent_monoid.json", "pair_f5_dual_numbers.json", "group_bundle_f3.json"}) {
    INFO(f);
    json j = json_io::parse_file(data(f));
    PrimeField F(*json_io::prime_of(j));
    CHECK(check_bialgebroid(json_io::bialgebroid_from_json(F, j)).all_passed());
  }
  json d = json_io::parse_file(data("dual_numbers_f5.json"));
  PrimeField F5(5);
  std::string path;
  FDAlgebra R = json_io::algebra_from_json(F5, json_io::algebra_block(d, path), path);
  CHECK(R.dim() == 2);
}

TEST_CASE("reserved characters in labels are rejected", "[json][negative]") {
  for (auto const* bad : {"(x", "a,b", "x.y", "p)"}) {
    json j = {{"objects", {"x"}}, {"arrows", {{{"name", bad}, {"src", "x"}, {"tgt", "x"}}}}};
    std::string msg = input_error([&] { json_io::span_from_json(j); });
    CHECK(msg.find("/arrows/0/name") != std::string::npos);
    CHECK(msg.find("reserved") != std::string::npos);
  }
  json o = {{"objects", {"x", "y,z"}}, {"arrows", json::array()}};
  CHECK(input_error([&] { json_io::span_from_json(o); }).find("/objects/1") != std::string::npos);
}

TEST_CASE("malformed input reports its location", "[json][negative]") {
  CHECK(input_error([] { json_io::parse_text("{\"objects\": [", "file.json"); }).find("file.json") != std::string::npos);
  CHECK(input_error([] { json_io::parse_file(data("missing.json")); }).find("cannot open") != std::string::npos);

  json missing = {{"objects", {"x"}}};
  CHECK(input_error([&] { json_io::span_from_json(missing); }).find("missing key 'arrows'") != std::string::npos);

  json unknown = {{"objects", {"x"}}, {"arrows", {{{"name", "f"}, {"src", "x"}, {"tgt", "q"}}}}};
  CHECK(input_error([&] { json_io::span_from_json(unknown); }).find("/arrows/0/tgt") != std::string::npos);

  json wrong_type = {{"objects", 3}};
  CHECK(input_error([&] { json_io::objects_from_json(wrong_type); }).find("/objects") != std::string::npos);

  json dup = {{"objects", {"x", "x"}}};
  CHECK_FALSE(input_error([&] { json_io::objects_from_json(dup); }).empty());

  json cat = json_io::to_json(catalog::cyclic_group(2));
  cat["compose"].erase(cat["compose"].begin());
  CHECK_FALSE(input_error([&] { json_io::category_from_json(cat); }).empty());

  json prime = {{"prime", 1}};
  CHECK_THROWS_AS(json_io::prime_of(prime), InputError);
  json prime_type = {{"prime", "five"}};
  CHECK_THROWS_AS(json_io::prime_of(prime_type), InputError);
  CHECK_FALSE(json_io::prime_of(json::object()).has_value());

  PrimeField F(3);
  json B = json_io::to_json(bialgebroids::cyclic_group_algebra(F, 2));
  B["eps"] = {{1, 0}};
  CHECK(input_error([&] { json_io::bialgebroid_from_json(F, B); }).find("bialgebroid") != std::string::npos);
  B["s"] = {{1}};
  CHECK(input_error([&] { json_io::bialgebroid_from_json(F, B); }).find("/s") != std::string::npos);
}

TEST_CASE("report serialization", "[json]") {
  Report r;
  r.add("first", true);
  r.add("second", false, "w");
  json j = json_io::to_json(r);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["diagram"] == "first");
  CHECK(j[0]["status"] == "pass");
  CHECK_FALSE(j[0].contains("witness"));
  CHECK(j[1]["status"] == "fail");
  CHECK(j[1]["witness"] == "w");
}
