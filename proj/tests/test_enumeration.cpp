#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>

#include "duoidal/span_catalog.hpp"

using namespace duoidal;

namespace {

// Identities are arrows 0..objects-1; table is dense, npos when not composable.
struct Raw {
  std::size_t objects;
  std::vector<std::size_t> src, tgt, table;
  std::size_t size() const { return src.size(); }
};

Raw raw_of(const SmallCategory& C) {
  std::size_t n0 = C.objects().size(), n = C.size();
  std::vector<std::size_t> order(C.identities());
  for (std::size_t a = 0; a < n; ++a)
    if (std::find(order.begin(), order.end(), a) == order.end()) order.push_back(a);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  Raw r{n0, std::vector<std::size_t>(n), std::vector<std::size_t>(n), std::vector<std::size_t>(n * n, npos)};
  for (std::size_t i = 0; i < n; ++i) {
    r.src[i] = C.src(order[i]);
    r.tgt[i] = C.tgt(order[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (auto c = C.compose(order[i], order[j])) r.table[i * n + j] = pos[*c];
  }
  return r;
}

bool associative(const Raw& r) {
  std::size_t n = r.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t ab = r.table[a * n + b];
      if (ab == npos) continue;
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t bc = r.table[b * n + c];
        if (bc == npos) continue;
        if (r.table[ab * n + c] != r.table[a * n + bc]) return false;
      }
    }
  return true;
}

bool isomorphic(const Raw& x, const Raw& y) {
  if (x.objects != y.objects || x.size() != y.size()) return false;
  std::size_t n0 = x.objects, n = x.size();
  std::vector<std::size_t> op(n0);
  std::iota(op.begin(), op.end(), std::size_t{0});
  do {
    std::vector<std::size_t> ap(n - n0);
    std::iota(ap.begin(), ap.end(), n0);
    do {
      auto f = [&](std::size_t a) { return a < n0 ? op[a] : ap[a - n0]; };
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = y.src[f(a)] == op[x.src[a]] && y.tgt[f(a)] == op[x.tgt[a]];
      for (std::size_t a = 0; a < n && ok; ++a)
        for (std::size_t b = 0; b < n && ok; ++b) {
          std::size_t v = x.table[a * n + b];
          if (v != npos) ok = y.table[f(a) * n + f(b)] == f(v);
        }
      if (ok) return true;
    } while (std::next_permutation(ap.begin(), ap.end()));
  } while (std::next_permutation(op.begin(), op.end()));
  return false;
}

// Every composition table on every arrow shape, filtered only by associativity,
// then reduced to isomorphism classes.
std::vector<Raw> brute_force(std::size_t n0, std::size_t n) {
  std::size_t k = n - n0;
  std::vector<Raw> classes;
  std::size_t shapes = 1;
  for (std::size_t i = 0; i < 2 * k; ++i) shapes *= n0;
  for (std::size_t code = 0; code < shapes; ++code) {
    Raw r{n0, std::vector<std::size_t>(n), std::vector<std::size_t>(n), std::vector<std::size_t>(n * n, npos)};
    std::size_t c = code;
    for (std::size_t x = 0; x < n0; ++x) r.src[x] = r.tgt[x] = x;
    for (std::size_t i = n0; i < n; ++i) {
      r.src[i] = c % n0;
      c /= n0;
      r.tgt[i] = c % n0;
      c /= n0;
    }
    std::vector<std::size_t> slots;
    std::vector<std::vector<std::size_t>> options;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (r.src[a] != r.tgt[b]) continue;
        if (a < n0) r.table[a * n + b] = b;
        else if (b < n0) r.table[a * n + b] = a;
        else {
          slots.push_back(a * n + b);
          std::vector<std::size_t> o;
          for (std::size_t v = 0; v < n; ++v)
            if (r.src[v] == r.src[b] && r.tgt[v] == r.tgt[a]) o.push_back(v);
          options.push_back(o);
        }
      }
    std::vector<std::size_t> choice(slots.size(), 0);
    if (std::any_of(options.begin(), options.end(), [](auto const& o) { return o.empty(); })) continue;
    while (true) {
      for (std::size_t i = 0; i < slots.size(); ++i) r.table[slots[i]] = options[i][choice[i]];
      if (associative(r) &&
          std::none_of(classes.begin(), classes.end(), [&](const Raw& q) { return isomorphic(q, r); }))
        classes.push_back(r);
      std::size_t i = 0;
      while (i < slots.size() && ++choice[i] == options[i].size()) choice[i++] = 0;
      if (i == slots.size()) break;
    }
  }
  return classes;
}

}  // namespace

TEST_CASE("enumeration matches an unpruned brute force", "[enumeration][oracle]") {
  auto cats = catalog::enumerate_small_categories(2, 4);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Raw>> found;
  for (auto const& C : cats) {
    CHECK(C.check_laws().all_passed());
    found[{C.objects().size(), C.size()}].push_back(raw_of(C));
  }
  for (std::size_t n0 = 1; n0 <= 2; ++n0)
    for (std::size_t n = n0; n <= 4; ++n) {
      INFO("objects " << n0 << " arrows " << n);
      auto oracle = brute_force(n0, n);
      auto const& mine = found[{n0, n}];
      CHECK(mine.size() == oracle.size());
      for (std::size_t i = 0; i < mine.size(); ++i)
        for (std::size_t j = i + 1; j < mine.size(); ++j) CHECK_FALSE(isomorphic(mine[i], mine[j]));
      for (auto const& m : mine)
        CHECK(std::any_of(oracle.begin(), oracle.end(), [&](const Raw& o) { return isomorphic(o, m); }));
    }
}

TEST_CASE("pinned enumeration counts", "[enumeration]") {
  std::map<std::size_t, std::size_t> monoids;
  for (auto const& C : catalog::enumerate_small_categories(1, 4)) ++monoids[C.size()];
  CHECK(monoids[1] == 1);
  CHECK(monoids[2] == 2);
  CHECK(monoids[3] == 7);
  CHECK(monoids[4] == 35);
  CHECK(catalog::enumerate_small_categories(2, 4).size() == 65);
  CHECK(catalog::enumerate_small_categories(0, 4).empty());
}

TEST_CASE("named catalog entries", "[enumeration]") {
  CHECK(catalog::cyclic_group(3).size() == 3);
  CHECK(catalog::symmetric_group_3().size() == 6);
  CHECK(catalog::indiscrete(3).size() == 9);
  CHECK(catalog::discrete(3).size() == 3);
  CHECK(catalog::walking_arrow().size() == 3);
  CHECK(catalog::product_with_monoid(catalog::cyclic_group(2), catalog::cyclic_group(2)).size() == 4);
  for (auto const& [name, C] : catalog::standard_corpus()) {
    INFO(name);
    CHECK(C.check_laws().all_passed());
  }
}
