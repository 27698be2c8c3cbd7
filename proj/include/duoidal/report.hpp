#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace duoidal {

struct CheckEntry {
  std::string name;
  bool passed = true;
  std::string witness;  // empty when passed
};

// Ordered list of named pass/fail checks.
class Report {
 public:
  void add(std::string name, bool passed, std::string witness = {}) {
    entries_.push_back({std::move(name), passed, passed ? std::string{} : std::move(witness)});
  }

  // Merge a failure into an existing entry of the same name, or create it.
  void record(const std::string& name, bool passed, const std::string& witness = {}) {
    for (auto& e : entries_) {
      if (e.name == name) {
        if (e.passed && !passed) {
          e.passed = false;
          e.witness = witness;
        }
        return;
      }
    }
    add(name, passed, witness);
  }

  void append(const Report& other, const std::string& prefix = {}) {
    for (auto const& e : other.entries_) record(prefix + e.name, e.passed, e.witness);
  }

  bool all_passed() const {
    return std::all_of(entries_.begin(), entries_.end(), [](auto const& e) { return e.passed; });
  }

  const CheckEntry* find(const std::string& name) const {
    for (auto const& e : entries_)
      if (e.name == name) return &e;
    return nullptr;
  }

  bool passed(const std::string& name) const {
    auto const* e = find(name);
    return e != nullptr && e->passed;
  }

  const CheckEntry* first_failure() const {
    for (auto const& e : entries_)
      if (!e.passed) return &e;
    return nullptr;
  }

  const std::vector<CheckEntry>& entries() const noexcept { return entries_; }

 private:
  std::vector<CheckEntry> entries_;
};

// Disjoint-set forest over {0, ..., n-1}.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }

  // Class index of every element; classes numbered by smallest member.
  std::vector<std::size_t> classes(std::size_t* count = nullptr) {
    std::vector<std::size_t> id(parent_.size(), static_cast<std::size_t>(-1));
    std::vector<std::size_t> out(parent_.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      std::size_t r = find(i);
      if (id[r] == static_cast<std::size_t>(-1)) id[r] = next++;
      out[i] = id[r];
    }
    if (count != nullptr) *count = next;
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

namespace detail {
inline std::string assignment_label(const std::vector<std::size_t>& idx) {
  static constexpr std::array<char, 6> vars{'A', 'B', 'C', 'D', 'E', 'F'};
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) s += ",";
    s += std::string(1, vars[i]) + "=" + std::to_string(idx[i]);
  }
  return s;
}
}  // namespace detail

}  // namespace duoidal
