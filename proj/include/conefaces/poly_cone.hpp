#pragma once

#include "conefaces/index_set.hpp"
#include "conefaces/order_witness.hpp"
#include "conefaces/spectra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

// Finitely generated proper cones in R^n, faces as generator index sets.
namespace conefaces::polycone {

using ratmath::Integer;
using ratmath::Rational;
using ratmath::RatMatrix;
using ratmath::RatVector;
using spectra::SpectralPair;
using spectra::SpectralValue;
using spectra::ToleranceConfig;

constexpr int kMaxDimension = 8;

struct GeneratorCone {
  int n = 0;
  std::vector<RatVector> generators;
  RatMatrix G;                        // generators as columns
  std::vector<RatVector> normals;     // primitive integer facet normals
  std::vector<IndexSet> facet_generators; // generators tight on each facet

  int generator_count() const { return static_cast<int>(generators.size()); }
  int facet_count() const { return static_cast<int>(normals.size()); }
};

// A face: the generators it contains and the facets containing it.
struct PolyFace {
  IndexSet generators;
  IndexSet facets;

  bool operator==(const PolyFace& o) const { return generators == o.generators; }
};

namespace detail {

inline RatVector primitive(RatVector v) {
  Integer den = 1, num = 0;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  for (auto& x : v) {
    x *= den;
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.get_num_mpz_t());
  }
  if (num != 0)
    for (auto& x : v) x /= num;
  return v;
}

inline void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= m - (k - depth); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (k <= m) rec(0, 0);
}

inline std::string vector_text(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + ratmath::to_string(v[i]);
  return s + ")";
}

} // namespace detail

inline GeneratorCone build_cone(const std::vector<RatVector>& generators) {
  if (generators.empty()) throw InputError("a cone needs at least one generator");
  const int n = static_cast<int>(generators[0].size());
  if (n < 1) throw InputError("ambient dimension must be positive");
  if (n > kMaxDimension)
    throw CapExceededError("ambient dimension " + std::to_string(n) + " exceeds the cap " +
                           std::to_string(kMaxDimension));
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (static_cast<int>(generators[k].size()) != n)
      throw InputError("generator " + std::to_string(k + 1) + " has the wrong length");
    if (ratmath::is_zero(generators[k])) throw InputError("generator " + std::to_string(k + 1) + " is zero");
  }
  GeneratorCone K;
  K.n = n;
  K.generators = generators;
  K.G = RatMatrix::from_columns(generators, n);
  const int m = K.generator_count();

  if (ratmath::rank(K.G) != static_cast<std::size_t>(n)) throw InputError("not full: generators do not span R^n");
  {
    // Pointed iff no c >= 0 with G c = 0 and sum c = 1.
    RatMatrix A(n + 1, m);
    RatVector b(n + 1, Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) A(i, j) = K.G(i, j);
    for (int j = 0; j < m; ++j) A(n, j) = 1;
    b[n] = 1;
    if (auto c = ratmath::lp_feasible_point(A, b))
      throw InputError("not pointed: generators combine to zero with weights " + detail::vector_text(*c));
  }

  std::map<RatVector, IndexSet> found;
  std::vector<RatVector> order;
  detail::for_each_subset(m, n - 1, [&](const std::vector<int>& sub) {
    RatMatrix S(sub.size(), n);
    for (std::size_t r = 0; r < sub.size(); ++r)
      for (int j = 0; j < n; ++j) S(r, j) = generators[sub[r]][j];
    auto rk = ratmath::rank_and_kernel(S);
    if (rk.rank != static_cast<std::size_t>(n - 1) || rk.kernel_basis.size() != 1) return;
    RatVector z = rk.kernel_basis[0];
    int pos = 0, neg = 0;
    for (const auto& g : generators) {
      int s = sgn(ratmath::dot(z, g));
      pos += s > 0;
      neg += s < 0;
    }
    if (pos > 0 && neg > 0) return;
    if (neg > 0) z = ratmath::scale(z, Rational(-1));
    z = detail::primitive(z);
    if (found.count(z)) return;
    IndexSet tight;
    for (int j = 0; j < m; ++j)
      if (sgn(ratmath::dot(z, generators[j])) == 0) tight.push_back(j);
    found.emplace(z, tight);
    order.push_back(z);
  });
  std::sort(order.begin(), order.end());
  for (const auto& z : order) {
    K.normals.push_back(z);
    K.facet_generators.push_back(found[z]);
  }
  return K;
}

// Generators e_1, ..., e_n.
inline GeneratorCone orthant_cone(int n) {
  std::vector<RatVector> gens;
  for (int i = 0; i < n; ++i) gens.push_back(ratmath::unit_vector(n, i));
  return build_cone(gens);
}

struct Membership {
  bool member = false;
  std::optional<RatVector> coefficients;    // x = G c, c >= 0
  std::optional<int> violated_facet;        // <z, x> < 0
};

inline Membership membership(const GeneratorCone& K, const RatVector& x) {
  if (static_cast<int>(x.size()) != K.n) throw InputError("vector length does not match the cone");
  Membership out;
  for (int f = 0; f < K.facet_count(); ++f)
    if (sgn(ratmath::dot(K.normals[f], x)) < 0) {
      out.violated_facet = f;
      break;
    }
  out.coefficients = ratmath::lp_feasible_point(K.G, x);
  out.member = out.coefficients.has_value();
  if (out.member == out.violated_facet.has_value())
    throw InternalError("membership certificates disagree for " + detail::vector_text(x));
  return out;
}

inline PolyFace face_with_facets(const GeneratorCone& K, const IndexSet& facets) {
  PolyFace F;
  for (int j = 0; j < K.generator_count(); ++j) {
    bool in = true;
    for (int f : facets)
      if (!contains(K.facet_generators[f], j)) {
        in = false;
        break;
      }
    if (in) F.generators.push_back(j);
  }
  for (int f = 0; f < K.facet_count(); ++f)
    if (is_subset(F.generators, K.facet_generators[f])) F.facets.push_back(f);
  return F;
}

// Smallest face containing the generators S.
inline PolyFace face_generated(const GeneratorCone& K, const IndexSet& S) {
  IndexSet facets;
  for (int f = 0; f < K.facet_count(); ++f)
    if (is_subset(S, K.facet_generators[f])) facets.push_back(f);
  return face_with_facets(K, facets);
}

inline PolyFace face_of(const GeneratorCone& K, const RatVector& x) {
  if (!membership(K, x).member) throw InputError("vector " + detail::vector_text(x) + " is not in the cone");
  IndexSet facets;
  for (int f = 0; f < K.facet_count(); ++f)
    if (sgn(ratmath::dot(K.normals[f], x)) == 0) facets.push_back(f);
  return face_with_facets(K, facets);
}

inline RatVector relint_point(const GeneratorCone& K, const PolyFace& F) {
  RatVector r(K.n, Rational(0));
  for (int j : F.generators) r = ratmath::add(r, K.generators[j]);
  return r;
}

inline PolyFace join(const GeneratorCone& K, const PolyFace& a, const PolyFace& b) {
  return face_generated(K, set_union(a.generators, b.generators));
}

inline PolyFace meet(const GeneratorCone& K, const PolyFace& a, const PolyFace& b) {
  return face_with_facets(K, set_union(a.facets, b.facets));
}

// All faces, by closing under intersection with facets; canonical order of
// generator sets.
inline std::vector<PolyFace> face_lattice(const GeneratorCone& K, std::size_t cap = 4096) {
  std::vector<PolyFace> faces{face_with_facets(K, {})};
  std::map<IndexSet, bool> seen{{faces[0].generators, true}};
  for (std::size_t k = 0; k < faces.size(); ++k)
    for (int f = 0; f < K.facet_count(); ++f) {
      if (contains(faces[k].facets, f)) continue;
      IndexSet fs = faces[k].facets;
      fs.push_back(f);
      PolyFace g = face_with_facets(K, normalized(fs));
      if (seen.emplace(g.generators, true).second) {
        faces.push_back(g);
        if (faces.size() > cap) throw CapExceededError("lattice too large (cap " + std::to_string(cap) + ")");
      }
    }
  std::sort(faces.begin(), faces.end(),
            [](const PolyFace& a, const PolyFace& b) { return canonical_less(a.generators, b.generators); });
  return faces;
}

inline bool is_cone_preserving(const GeneratorCone& K, const RatMatrix& A) {
  if (A.rows() != static_cast<std::size_t>(K.n) || !A.square()) throw InputError("matrix does not match the cone");
  for (const auto& g : K.generators)
    if (!membership(K, A * g).member) return false;
  return true;
}

inline bool is_invariant(const GeneratorCone& K, const RatMatrix& A, const PolyFace& F) {
  for (int j : F.generators) {
    RatVector y = A * K.generators[j];
    for (int f : F.facets)
      if (sgn(ratmath::dot(K.normals[f], y)) != 0) return false;
  }
  return true;
}

inline SpectralPair face_spectral_pair_poly(const GeneratorCone& K, const RatMatrix& A, const PolyFace& F,
                                            const ToleranceConfig& tol = {}) {
  if (F.generators.empty()) return SpectralPair::zero();
  return spectra::spectral_pair(A, relint_point(K, F), tol);
}

struct InvariantLattice {
  std::vector<PolyFace> faces;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  std::vector<SpectralPair> pairs; // sp_A of each face

  std::size_t index_of(const IndexSet& gens) const {
    for (std::size_t k = 0; k < faces.size(); ++k)
      if (faces[k].generators == gens) return k;
    return faces.size();
  }
};

inline InvariantLattice invariant_face_lattice(const GeneratorCone& K, const RatMatrix& A, std::size_t cap = 4096,
                                               const ToleranceConfig& tol = {}) {
  if (!is_cone_preserving(K, A)) throw InputError("matrix does not preserve the cone");
  InvariantLattice lat;
  for (auto& F : face_lattice(K, cap))
    if (is_invariant(K, A, F)) lat.faces.push_back(std::move(F));
  std::vector<IndexSet> sets;
  for (const auto& F : lat.faces) sets.push_back(F.generators);
  for (const auto& a : lat.faces)
    for (const auto& b : lat.faces)
      if (lat.index_of(join(K, a, b).generators) == lat.faces.size() ||
          lat.index_of(meet(K, a, b).generators) == lat.faces.size())
        throw InternalError("invariant faces are not closed under meet and join");
  lat.covers = SetLattice::hasse_covers(sets);
  for (const auto& F : lat.faces) lat.pairs.push_back(face_spectral_pair_poly(K, A, F, tol));
  return lat;
}

inline PolyFace smallest_invariant_face_poly(const GeneratorCone& K, const RatMatrix& A, const RatVector& x) {
  if (!membership(K, x).member) throw InputError("vector " + detail::vector_text(x) + " is not in the cone");
  RatMatrix shift = RatMatrix::identity(K.n) + A;
  return face_of(K, shift.pow(static_cast<unsigned>(K.n - 1)) * x);
}


// ---------------------------------------------------------------------------
// Classification.

namespace detail {

inline RatMatrix generator_block(const GeneratorCone& K, const IndexSet& S) {
  std::vector<RatVector> cols;
  for (int j : S) cols.push_back(K.generators[j]);
  return RatMatrix::from_columns(cols, K.n);
}

// Some c >= 1 with M c = 0 (a strictly positive combination of the columns).
inline bool strictly_positive_kernel_point(const RatMatrix& M) {
  std::vector<std::optional<Rational>> lower(M.cols(), Rational(1));
  auto res = ratmath::lp_solve({M, RatVector(M.rows(), Rational(0)), lower, RatVector(M.cols(), Rational(0)),
                                ratmath::LpSense::maximize});
  return res.status != ratmath::LpStatus::infeasible;
}

// Some c >= 1 with N^k B c = 0 and N^(k-1) B c != 0.
inline bool relint_order_witness(const RatMatrix& N, const RatMatrix& B, int k) {
  RatMatrix lower = N.pow(static_cast<unsigned>(k - 1)) * B;
  RatMatrix kill = N * lower;
  std::vector<std::optional<Rational>> lb(B.cols(), Rational(1));
  RatVector zero(kill.rows(), Rational(0));
  for (std::size_t i = 0; i < lower.rows(); ++i) {
    RatVector c(B.cols());
    bool nonzero = false;
    for (std::size_t j = 0; j < B.cols(); ++j) {
      c[j] = lower(i, j);
      nonzero = nonzero || sgn(c[j]) != 0;
    }
    if (!nonzero) continue;
    for (auto sense : {ratmath::LpSense::maximize, ratmath::LpSense::minimize}) {
      auto res = ratmath::lp_solve({kill, zero, lb, c, sense});
      if (res.status == ratmath::LpStatus::infeasible) return false;
      if (res.status == ratmath::LpStatus::unbounded || sgn(res.optimum) != 0) return true;
    }
  }
  return false;
}

} // namespace detail

struct PolyFaceClassification {
  PolyFace face;
  bool invariant = false;
  bool nonzero = false;
  bool minimal = false;
  bool join_irreducible = false;
  std::optional<bool> relint_generalized_eigenvector; // empty when rho_F is irrational
  std::optional<bool> relint_eigenvector;
  std::optional<bool> semi_distinguished;
  bool distinguished = false;
  SpectralPair pair;
};

inline PolyFaceClassification classify_face_poly(const GeneratorCone& K, const RatMatrix& A, const PolyFace& F,
                                                 const InvariantLattice& lat, const ToleranceConfig& tol = {}) {
  PolyFaceClassification out;
  out.face = F;
  out.invariant = is_invariant(K, A, F);
  out.nonzero = !F.generators.empty();
  const std::size_t at = lat.index_of(F.generators);
  out.pair = at < lat.faces.size() ? lat.pairs[at] : face_spectral_pair_poly(K, A, F, tol);
  if (!out.invariant) throw InputError("face " + format_one_based(F.generators) + " is not invariant");
  if (!out.nonzero) {
    out.join_irreducible = true;
    out.relint_generalized_eigenvector = out.relint_eigenvector = out.semi_distinguished = false;
    return out;
  }
  IndexSet below;
  bool minimal = true, dist = true;
  for (std::size_t g = 0; g < lat.faces.size(); ++g) {
    const auto& G = lat.faces[g];
    if (!is_proper_subset(G.generators, F.generators)) continue;
    below = set_union(below, G.generators);
    if (G.generators.empty()) continue;
    minimal = false;
    if (!spectra::approx_less(lat.pairs[g].radius, out.pair.radius, tol)) dist = false;
  }
  out.minimal = minimal;
  out.join_irreducible = face_generated(K, below).generators != F.generators;
  out.distinguished = dist;

  if (out.pair.radius.exact) {
    RatMatrix N = A.shifted(*out.pair.radius.exact);
    RatMatrix B = detail::generator_block(K, F.generators);
    const unsigned d = static_cast<unsigned>(ratmath::rank(B));
    out.relint_generalized_eigenvector = detail::strictly_positive_kernel_point(N.pow(d) * B);
    out.relint_eigenvector = detail::strictly_positive_kernel_point(N * B);
    out.semi_distinguished = out.join_irreducible && *out.relint_generalized_eigenvector;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distinguished generalized eigenvectors and the chain of semi-distinguished faces.

inline int max_distinguished_order(const GeneratorCone& K, const RatMatrix& A, const Rational& lambda,
                                   RatVector* witness = nullptr) {
  RatMatrix N = A.shifted(lambda);
  if (!ratmath::order_witness(N, K.G, 1))
    throw InputError("not a distinguished eigenvalue: " + ratmath::to_string(lambda));
  return ratmath::max_witnessed_order(N, K.G, K.n, witness);
}

struct RothblumChain {
  std::vector<PolyFace> faces;   // increasing; faces[k-1] has spectral pair (lambda, k)
  int m_lambda = 0;
  int longest_semidistinguished = 0; // exhaustive over the invariant lattice
};

inline RothblumChain rothblum_chain(const GeneratorCone& K, const RatMatrix& A, const Rational& lambda,
                                    const ToleranceConfig& tol = {}, std::size_t cap = 4096) {
  RothblumChain out;
  out.m_lambda = max_distinguished_order(K, A, lambda);
  auto lat = invariant_face_lattice(K, A, cap, tol);
  RatMatrix N = A.shifted(lambda);
  const SpectralValue lam = SpectralValue::of(lambda);

  IndexSet ceiling(K.generator_count());
  for (int j = 0; j < K.generator_count(); ++j) ceiling[j] = j;
  std::vector<PolyFace> chain;
  for (int k = out.m_lambda; k >= 1; --k) {
    std::vector<std::size_t> hits;
    for (std::size_t f = 0; f < lat.faces.size(); ++f) {
      const auto& F = lat.faces[f];
      if (F.generators.empty() || !is_subset(F.generators, ceiling)) continue;
      if (detail::relint_order_witness(N, detail::generator_block(K, F.generators), k)) hits.push_back(f);
    }
    std::vector<std::size_t> minimal;
    for (std::size_t a : hits) {
      bool is_min = true;
      for (std::size_t b : hits)
        if (is_proper_subset(lat.faces[b].generators, lat.faces[a].generators)) is_min = false;
      if (is_min) minimal.push_back(a);
    }
    if (minimal.empty())
      throw InternalError("no invariant face carries a generalized eigenvector of order " + std::to_string(k));
    std::size_t pick = *std::min_element(minimal.begin(), minimal.end(), [&](std::size_t a, std::size_t b) {
      return lat.faces[a].generators < lat.faces[b].generators;
    });
    const PolyFace& F = lat.faces[pick];
    auto cls = classify_face_poly(K, A, F, lat, tol);
    if (!cls.semi_distinguished.value_or(false) || !spectra::pair_equal(cls.pair, {lam, k}, tol))
      throw InternalError("chain member " + format_one_based(F.generators) + " is not semi-distinguished at order " +
                          std::to_string(k));
    chain.push_back(F);
    ceiling = F.generators;
  }
  std::reverse(chain.begin(), chain.end());
  out.faces = std::move(chain);

  // Longest chain of semi-distinguished faces at lambda, by inclusion order.
  std::vector<std::size_t> semi;
  for (std::size_t f = 0; f < lat.faces.size(); ++f) {
    const auto& F = lat.faces[f];
    if (F.generators.empty()) continue;
    auto cls = classify_face_poly(K, A, F, lat, tol);
    if (cls.semi_distinguished.value_or(false) && spectra::approx_equal(cls.pair.radius, lam, tol)) semi.push_back(f);
  }
  std::sort(semi.begin(), semi.end(),
            [&](std::size_t a, std::size_t b) { return lat.faces[a].generators.size() < lat.faces[b].generators.size(); });
  std::vector<int> len(semi.size(), 1);
  for (std::size_t i = 0; i < semi.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (is_proper_subset(lat.faces[semi[j]].generators, lat.faces[semi[i]].generators))
        len[i] = std::max(len[i], len[j] + 1);
    out.longest_semidistinguished = std::max(out.longest_semidistinguished, len[i]);
  }
  if (out.longest_semidistinguished != out.m_lambda)
    throw InternalError("semi-distinguished chain of length " + std::to_string(out.longest_semidistinguished) +
                        " against m_lambda = " + std::to_string(out.m_lambda));
  return out;
}

// ---------------------------------------------------------------------------
// Uniqueness of the dual distinguished eigenvector.

// Extreme rays of {w = B t : <w, g> >= 0 for every generator g}.
inline std::vector<RatVector> dual_section_rays(const GeneratorCone& K, const std::vector<RatVector>& basis) {
  const std::size_t k = basis.size();
  if (k == 0) return {};
  RatMatrix B = RatMatrix::from_columns(basis, K.n);
  RatMatrix M = K.G.transpose() * B; // rows: <g_j, B t>
  const int m = static_cast<int>(M.rows());
  std::vector<RatVector> rays;
  detail::for_each_subset(m, static_cast<int>(k) - 1, [&](const std::vector<int>& sub) {
    RatMatrix S(sub.size(), k);
    for (std::size_t r = 0; r < sub.size(); ++r)
      for (std::size_t c = 0; c < k; ++c) S(r, c) = M(sub[r], c);
    auto rk = ratmath::rank_and_kernel(S);
    if (rk.kernel_basis.size() != 1) return;
    for (int s : {1, -1}) {
      RatVector t = ratmath::scale(rk.kernel_basis[0], Rational(s));
      RatVector vals = M * t;
      if (std::any_of(vals.begin(), vals.end(), [](const Rational& v) { return sgn(v) < 0; })) continue;
      RatVector w = detail::primitive(B * t);
      if (std::find(rays.begin(), rays.end(), w) == rays.end()) rays.push_back(w);
    }
  });
  return rays;
}

struct DualUniquenessReport {
  bool a = false, b = false, c = false;
  std::vector<RatVector> dual_distinguished_eigenvectors; // extreme rays, all eigenvalues
  bool equivalence_holds = false; // K* is facially exposed, so a, b, c agree
};

inline DualUniquenessReport check_dual_uniqueness(const GeneratorCone& K, const RatMatrix& A, const ToleranceConfig& tol = {},
                                        std::size_t cap = 4096) {
  auto lat = invariant_face_lattice(K, A, cap, tol);
  RatMatrix At = A.transpose();
  std::vector<Rational> eigenvalues;
  for (const auto& sf : ratmath::squarefree_decompose(ratmath::minimal_polynomial(A))) {
    const auto& f = sf.factor;
    auto roots = ratmath::rational_roots_squarefree(f);
    if (ratmath::isolate_real_roots(f).size() != roots.size())
      throw UnsupportedModeError("rational-spectrum mode required: irrational real eigenvalue");
    eigenvalues.insert(eigenvalues.end(), roots.begin(), roots.end());
  }
  DualUniquenessReport rep;
  for (const auto& lambda : eigenvalues) {
    auto basis = ratmath::rank_and_kernel(At.shifted(lambda)).kernel_basis;
    for (auto& w : dual_section_rays(K, basis)) rep.dual_distinguished_eigenvectors.push_back(std::move(w));
  }
  rep.a = rep.dual_distinguished_eigenvectors.size() == 1;

  PolyFace whole = face_with_facets(K, {});
  auto cls = classify_face_poly(K, A, whole, lat, tol);
  rep.b = cls.semi_distinguished.value_or(false);
  rep.c = true;
  for (std::size_t f = 0; f < lat.faces.size(); ++f)
    if (lat.faces[f].generators != whole.generators && spectra::compare(lat.pairs[f], cls.pair, tol) >= 0)
      rep.c = false;
  rep.equivalence_holds = rep.a == rep.b && rep.b == rep.c;
  return rep;
}

// ---------------------------------------------------------------------------
// Rank-one maps y z^T.

struct RankOneReport {
  RatMatrix map;
  bool orthogonal = false;        // <z, y> = 0
  bool a = false;                 // K join-irreducible among invariant faces
  bool b = false;                 // one facet contains y, and it includes d(Phi(z))
  bool c = false;                 // one facet contains y
  PolyFace dual_face;             // d_{K*}(Phi(z)) as a face of K
  IndexSet facets_containing_y;
  bool consistent = false;        // a <=> b, and c joins when orthogonal
};

inline RankOneReport rank_one_analysis(const GeneratorCone& K, const RatVector& y, const RatVector& z,
                                       const ToleranceConfig& tol = {}, std::size_t cap = 4096) {
  if (static_cast<int>(y.size()) != K.n || static_cast<int>(z.size()) != K.n)
    throw InputError("vector length does not match the cone");
  if (ratmath::is_zero(y) || ratmath::is_zero(z)) throw InputError("y and z must be nonzero");
  PolyFace fy = face_of(K, y);
  if (fy.generators.size() == static_cast<std::size_t>(K.generator_count()))
    throw InputError("y lies in the interior of the cone");
  bool touches = false;
  for (const auto& g : K.generators) {
    int s = sgn(ratmath::dot(z, g));
    if (s < 0) throw InputError("z is not in the dual cone");
    touches = touches || s == 0;
  }
  if (!touches) throw InputError("z lies in the interior of the dual cone");

  RankOneReport rep;
  rep.map = RatMatrix(K.n, K.n);
  for (int i = 0; i < K.n; ++i)
    for (int j = 0; j < K.n; ++j) rep.map(i, j) = y[i] * z[j];
  rep.orthogonal = sgn(ratmath::dot(z, y)) == 0;

  auto lat = invariant_face_lattice(K, rep.map, cap, tol);
  PolyFace whole = face_with_facets(K, {});
  rep.a = classify_face_poly(K, rep.map, whole, lat, tol).join_irreducible;

  IndexSet tight;
  for (int j = 0; j < K.generator_count(); ++j)
    if (sgn(ratmath::dot(z, K.generators[j])) == 0) tight.push_back(j);
  rep.dual_face = face_generated(K, tight);
  rep.facets_containing_y = fy.facets;
  rep.c = fy.facets.size() == 1;
  rep.b = rep.c && is_subset(rep.dual_face.generators, K.facet_generators[fy.facets[0]]);
  rep.consistent = rep.a == rep.b && (!rep.orthogonal || rep.c == rep.a);
  return rep;
}

} // namespace conefaces::polycone
