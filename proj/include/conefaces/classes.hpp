#pragma once

#include "conefaces/index_set.hpp"
#include "conefaces/spectra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace conefaces::classes {

using ratmath::RatMatrix;
using spectra::SpectralValue;
using spectra::ToleranceConfig;

// Strongly connected components of G(P) (edge i -> j iff p_ij != 0), the
// accessibility order between them and the per-class taxonomy.
struct ClassStructure {
  int n = 0;
  RatMatrix matrix;
  ToleranceConfig tol;
  std::vector<IndexSet> classes;           // ordered by smallest member
  std::vector<int> class_of;               // index -> class id
  std::vector<std::vector<char>> access;   // access[a][b]: a has access to b (reflexive)
  std::vector<SpectralValue> radius;       // rho(P_aa)
  SpectralValue rho;                       // rho(P)
  std::vector<char> basic, initial, final, distinguished, semi_distinguished;

  int class_count() const { return static_cast<int>(classes.size()); }
  bool has_access(int a, int b) const { return access[a][b] != 0; }

  // Classes (ids) having access to `a`, including `a`.
  std::vector<int> ancestors(int a) const {
    std::vector<int> out;
    for (int b = 0; b < class_count(); ++b)
      if (has_access(b, a)) out.push_back(b);
    return out;
  }

  IndexSet indices_of(const std::vector<int>& class_ids) const {
    IndexSet out;
    for (int c : class_ids) out.insert(out.end(), classes[c].begin(), classes[c].end());
    return normalized(std::move(out));
  }

  // Class ids making up a union of classes.
  std::vector<int> classes_in(const IndexSet& s) const {
    std::vector<int> out;
    for (int i : s) out.push_back(class_of[i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool associated_with(int a, const SpectralValue& lambda) const { return spectra::approx_equal(radius[a], lambda, tol); }
};

namespace detail {

inline void strong_components(const RatMatrix& P, std::vector<IndexSet>& comps) {
  const int n = static_cast<int>(P.rows());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w = 0; w < n; ++w) {
      if (sgn(P(v, w)) == 0) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      IndexSet comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.push_back(w);
      } while (w != v);
      comps.push_back(normalized(std::move(comp)));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  std::sort(comps.begin(), comps.end(), [](const IndexSet& a, const IndexSet& b) { return a.front() < b.front(); });
}

} // namespace detail

inline ClassStructure build_classes(const RatMatrix& P, const ToleranceConfig& tol = {}) {
  if (!P.square() || P.rows() == 0) throw InputError("matrix must be square and nonempty");
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j)
      if (sgn(P(i, j)) < 0)
        throw InputError("not a nonnegative matrix: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  tol.validate();

  ClassStructure cs;
  cs.n = static_cast<int>(P.rows());
  cs.matrix = P;
  cs.tol = tol;
  detail::strong_components(P, cs.classes);
  const int k = cs.class_count();
  cs.class_of.assign(cs.n, -1);
  for (int c = 0; c < k; ++c)
    for (int i : cs.classes[c]) cs.class_of[i] = c;

  cs.access.assign(k, std::vector<char>(k, 0));
  for (int c = 0; c < k; ++c) cs.access[c][c] = 1;
  for (int i = 0; i < cs.n; ++i)
    for (int j = 0; j < cs.n; ++j)
      if (sgn(P(i, j)) != 0) cs.access[cs.class_of[i]][cs.class_of[j]] = 1;
  for (int m = 0; m < k; ++m)
    for (int a = 0; a < k; ++a)
      if (cs.access[a][m])
        for (int b = 0; b < k; ++b)
          if (cs.access[m][b]) cs.access[a][b] = 1;

  cs.radius.resize(k);
  for (int c = 0; c < k; ++c) cs.radius[c] = spectra::perron_root(P.submatrix(cs.classes[c], cs.classes[c]), tol);
  cs.rho = cs.radius[0];
  for (int c = 1; c < k; ++c)
    if (spectra::approx_less(cs.rho, cs.radius[c], tol) ||
        (spectra::approx_equal(cs.rho, cs.radius[c], tol) && !cs.rho.exact && cs.radius[c].exact))
      cs.rho = cs.radius[c];

  cs.basic.assign(k, 0);
  cs.initial.assign(k, 0);
  cs.final.assign(k, 0);
  cs.distinguished.assign(k, 0);
  cs.semi_distinguished.assign(k, 0);
  for (int a = 0; a < k; ++a) {
    cs.basic[a] = spectra::approx_equal(cs.radius[a], cs.rho, tol);
    bool initial = true, fin = true, dist = true, semi = true;
    for (int b = 0; b < k; ++b) {
      if (b == a) continue;
      if (cs.has_access(b, a)) {
        initial = false;
        if (!spectra::approx_less(cs.radius[b], cs.radius[a], tol)) dist = false;
        if (spectra::approx_less(cs.radius[a], cs.radius[b], tol)) semi = false;
      }
      if (cs.has_access(a, b)) fin = false;
    }
    cs.initial[a] = initial;
    cs.final[a] = fin;
    cs.distinguished[a] = dist;
    cs.semi_distinguished[a] = semi;
  }
  return cs;
}

// P_{S'S} = 0.
inline bool is_initial(const IndexSet& s, const ClassStructure& cs) {
  for (int i = 0; i < cs.n; ++i) {
    if (contains(s, i)) continue;
    for (int j : s)
      if (sgn(cs.matrix(i, j)) != 0) return false;
  }
  return true;
}

// Smallest initial subset containing s: every index with access to s.
inline IndexSet initial_closure(const IndexSet& s, const ClassStructure& cs) {
  std::vector<int> ids;
  for (int c = 0; c < cs.class_count(); ++c)
    for (int i : s)
      if (cs.has_access(c, cs.class_of[i])) {
        ids.push_back(c);
        break;
      }
  return cs.indices_of(ids);
}

inline IndexSet initial_set_of_class(int a, const ClassStructure& cs) { return cs.indices_of(cs.ancestors(a)); }

// Classes final in the initial collection making up s (sinks within it).
inline std::vector<int> final_classes_in(const IndexSet& s, const ClassStructure& cs) {
  std::vector<int> ids = cs.classes_in(s), out;
  for (int a : ids) {
    bool sink = true;
    for (int b : ids)
      if (b != a && cs.has_access(a, b)) sink = false;
    if (sink) out.push_back(a);
  }
  return out;
}

// All ancestor-closed unions of classes, sorted canonically.
inline std::vector<IndexSet> enumerate_initial_subsets(const ClassStructure& cs, std::size_t cap = 4096) {
  const int k = cs.class_count();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> anc_count(k);
  for (int c = 0; c < k; ++c) anc_count[c] = static_cast<int>(cs.ancestors(c).size());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return anc_count[a] < anc_count[b]; });

  std::vector<std::vector<int>> found;
  std::vector<char> chosen(k, 0);
  std::function<void(int)> walk = [&](int pos) {
    if (pos == k) {
      std::vector<int> ids;
      for (int c = 0; c < k; ++c)
        if (chosen[c]) ids.push_back(c);
      found.push_back(std::move(ids));
      if (found.size() > cap) throw CapExceededError("lattice too large (cap " + std::to_string(cap) + ")");
      return;
    }
    const int c = order[pos];
    walk(pos + 1);
    for (int b = 0; b < k; ++b)
      if (b != c && cs.has_access(b, c) && !chosen[b]) return;
    chosen[c] = 1;
    walk(pos + 1);
    chosen[c] = 0;
  };
  walk(0);

  std::vector<IndexSet> out;
  out.reserve(found.size());
  for (const auto& ids : found) out.push_back(cs.indices_of(ids));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

struct ClassChain {
  int length = 0;
  std::vector<int> chain; // class ids, ancestors first
};

// Longest chain (under accessibility) of classes satisfying `member`.
inline ClassChain longest_chain(const ClassStructure& cs, const std::function<bool(int)>& member) {
  const int k = cs.class_count();
  std::vector<int> order(k), len(k, 0), prev(k, -1);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> anc_count(k);
  for (int c = 0; c < k; ++c) anc_count[c] = static_cast<int>(cs.ancestors(c).size());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return anc_count[a] < anc_count[b]; });
  ClassChain best;
  int best_end = -1;
  for (int c : order) {
    if (!member(c)) continue;
    len[c] = 1;
    for (int b : order) {
      if (b == c || !member(b) || !cs.has_access(b, c) || len[b] == 0) continue;
      if (len[b] + 1 > len[c]) {
        len[c] = len[b] + 1;
        prev[c] = b;
      }
    }
    if (len[c] > best.length) {
      best.length = len[c];
      best_end = c;
    }
  }
  for (int c = best_end; c >= 0; c = prev[c]) best.chain.push_back(c);
  std::reverse(best.chain.begin(), best.chain.end());
  return best;
}

inline ClassChain longest_basic_chain(const ClassStructure& cs) {
  return longest_chain(cs, [&](int c) { return cs.basic[c] != 0; });
}

inline bool is_distinguished_eigenvalue(const ClassStructure& cs, const SpectralValue& lambda) {
  for (int c = 0; c < cs.class_count(); ++c)
    if (cs.distinguished[c] && cs.associated_with(c, lambda)) return true;
  return false;
}

inline ClassChain longest_semidistinguished_chain(const ClassStructure& cs, const SpectralValue& lambda) {
  if (!is_distinguished_eigenvalue(cs, lambda))
    throw InputError("not a distinguished eigenvalue: " + lambda.to_string());
  return longest_chain(cs, [&](int c) { return cs.semi_distinguished[c] && cs.associated_with(c, lambda); });
}

// True iff two distinct basic classes are comparable under accessibility.
inline bool has_comparable_basic_classes(const ClassStructure& cs) {
  for (int a = 0; a < cs.class_count(); ++a)
    for (int b = 0; b < cs.class_count(); ++b)
      if (a != b && cs.basic[a] && cs.basic[b] && cs.has_access(a, b)) return true;
  return false;
}

// Accessibility covers between classes (transitive reduction).
inline std::vector<std::pair<int, int>> access_covers(const ClassStructure& cs) {
  std::vector<std::pair<int, int>> out;
  const int k = cs.class_count();
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (a == b || !cs.has_access(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < k && direct; ++c)
        if (c != a && c != b && cs.has_access(a, c) && cs.has_access(c, b)) direct = false;
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

} // namespace conefaces::classes
