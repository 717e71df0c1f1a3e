#pragma once

#include <algorithm>
#include <iterator>
#include <string>
#include <vector>

namespace conefaces {

// Sorted, duplicate-free 0-based indices.
using IndexSet = std::vector<int>;

inline IndexSet normalized(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool is_proper_subset(const IndexSet& a, const IndexSet& b) { return a.size() < b.size() && is_subset(a, b); }

inline bool comparable(const IndexSet& a, const IndexSet& b) { return is_subset(a, b) || is_subset(b, a); }

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool contains(const IndexSet& s, int i) { return std::binary_search(s.begin(), s.end(), i); }

// Canonical order: by cardinality, then lexicographically.
inline bool canonical_less(const IndexSet& a, const IndexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// "{1,2,3}" with 1-based labels.
inline std::string format_one_based(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(s[k] + 1);
  }
  return out + "}";
}

inline IndexSet full_set(int n) {
  IndexSet s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return s;
}

// Hasse diagram of a family of sets ordered by inclusion.
struct SetLattice {
  std::vector<IndexSet> elements;
  std::vector<std::pair<std::size_t, std::size_t>> covers; // (lower, upper)

  static std::vector<std::pair<std::size_t, std::size_t>> hasse_covers(const std::vector<IndexSet>& els) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::vector<std::size_t> below;
    for (std::size_t b = 0; b < els.size(); ++b) {
      below.clear();
      for (std::size_t a = 0; a < els.size(); ++a)
        if (is_proper_subset(els[a], els[b])) below.push_back(a);
      for (std::size_t a : below) {
        bool direct = true;
        for (std::size_t c : below)
          if (is_proper_subset(els[a], els[c])) {
            direct = false;
            break;
          }
        if (direct) out.emplace_back(a, b);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t index_of(const IndexSet& s) const {
    for (std::size_t k = 0; k < elements.size(); ++k)
      if (elements[k] == s) return k;
    return elements.size();
  }
};

} // namespace conefaces
