#pragma once

#include "conefaces/classes.hpp"
#include "conefaces/order_witness.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

// Faces of the nonnegative orthant, encoded by index sets: F_I is the set of
// nonnegative vectors supported in I.
namespace conefaces::orthant {

using classes::ClassStructure;
using ratmath::Rational;
using ratmath::RatMatrix;
using ratmath::RatVector;
using spectra::SpectralPair;
using spectra::SpectralValue;
using spectra::ToleranceConfig;

inline SetLattice invariant_face_lattice(const ClassStructure& cs, std::size_t cap = 4096) {
  SetLattice lat;
  lat.elements = classes::enumerate_initial_subsets(cs, cap);
  lat.covers = SetLattice::hasse_covers(lat.elements);
  return lat;
}

inline IndexSet support(const RatVector& x) {
  IndexSet s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) s.push_back(static_cast<int>(i));
  return s;
}

inline IndexSet smallest_invariant_face(const ClassStructure& cs, const RatVector& x) {
  if (static_cast<int>(x.size()) != cs.n) throw InputError("vector length does not match the matrix");
  for (const auto& v : x)
    if (sgn(v) < 0) throw InputError("vector is not nonnegative");
  return classes::initial_closure(support(x), cs);
}

// sp(F_I) through the smallest invariant face containing it: the largest
// class radius inside, and the longest chain of classes attaining it.
inline SpectralPair face_spectral_pair(const ClassStructure& cs, const IndexSet& face) {
  IndexSet closed = classes::initial_closure(face, cs);
  if (closed.empty()) return SpectralPair::zero();
  std::vector<int> ids = cs.classes_in(closed);
  SpectralValue top = cs.radius[ids[0]];
  for (int c : ids)
    if (spectra::approx_less(top, cs.radius[c], cs.tol) ||
        (spectra::approx_equal(top, cs.radius[c], cs.tol) && !top.exact && cs.radius[c].exact))
      top = cs.radius[c];
  std::vector<char> in(cs.class_count(), 0);
  for (int c : ids) in[c] = 1;
  auto chain = classes::longest_chain(cs, [&](int c) { return in[c] && cs.associated_with(c, top); });
  return {top, chain.length};
}

struct FaceClassification {
  IndexSet face;
  IndexSet closure;                  // smallest invariant face containing it
  bool invariant = false;
  bool nonzero = false;
  bool minimal = false;              // minimal nonzero invariant face
  bool join_irreducible = false;     // within the invariant-face lattice
  bool relint_generalized_eigenvector = false;
  bool relint_eigenvector = false;
  std::optional<SpectralValue> eigenvalue; // lambda for the two relint flags
  bool semi_distinguished = false;
  bool distinguished = false;
  SpectralValue rho;                 // rho_F
  SpectralPair pair;                 // sp_A(F)
};

// Every flag is read off the class structure of the (closed) index set.
inline FaceClassification classify_face(const ClassStructure& cs, const IndexSet& face) {
  FaceClassification out;
  out.face = normalized(face);
  out.closure = classes::initial_closure(out.face, cs);
  out.invariant = out.closure == out.face;
  const IndexSet& I = out.closure;
  out.pair = face_spectral_pair(cs, I);
  out.rho = out.pair.radius;
  out.nonzero = !I.empty();
  if (!out.nonzero) {
    out.join_irreducible = true; // the zero face, by convention
    return out;
  }
  std::vector<int> ids = cs.classes_in(I);
  out.minimal = ids.size() == 1 && cs.initial[ids[0]];
  std::vector<int> finals = classes::final_classes_in(I, cs);
  out.join_irreducible = finals.size() == 1;

  const SpectralValue& lambda = cs.radius[finals[0]];
  bool common = true, semi = true, dist = true;
  for (int a : finals) {
    common = common && cs.associated_with(a, lambda);
    semi = semi && cs.semi_distinguished[a];
    dist = dist && cs.distinguished[a];
  }
  out.relint_generalized_eigenvector = common && semi;
  out.relint_eigenvector = common && dist;
  if (out.relint_generalized_eigenvector) out.eigenvalue = lambda;
  out.semi_distinguished = out.join_irreducible && out.relint_generalized_eigenvector;
  out.distinguished = out.join_irreducible && out.relint_eigenvector;
  return out;
}

struct DistinguishedEigenvalue {
  SpectralValue value;
  std::vector<int> classes; // distinguished classes with this radius
};

inline std::vector<DistinguishedEigenvalue> distinguished_eigenvalues(const ClassStructure& cs) {
  std::vector<DistinguishedEigenvalue> out;
  for (int c = 0; c < cs.class_count(); ++c) {
    if (!cs.distinguished[c]) continue;
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& d) { return spectra::approx_equal(d.value, cs.radius[c], cs.tol); });
    if (it == out.end()) {
      out.push_back({cs.radius[c], {c}});
    } else {
      it->classes.push_back(c);
      if (!it->value.exact && cs.radius[c].exact) it->value = cs.radius[c];
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value.approx < b.value.approx; });
  return out;
}

// ---------------------------------------------------------------------------
// Frobenius-Victory eigenvectors.

enum class EigenMode { automatic, exact, numeric };

struct FvVector {
  int cls = -1;
  SpectralValue lambda;
  std::optional<RatVector> exact; // present in exact mode
  std::vector<double> approx;     // max entry 1
  IndexSet support;
  double residual = 0;            // ||P x - lambda x||_inf, 0 in exact mode
  bool exact_mode() const { return exact.has_value(); }
};

namespace detail {

inline RatVector normalize_max_one(RatVector x) {
  Rational top = 0;
  for (const auto& v : x)
    if (abs(v) > abs(top)) top = v;
  for (auto& v : x) v /= top;
  return x;
}

inline double residual_inf(const RatMatrix& P, const std::vector<double>& x, double lambda) {
  double worst = 0;
  for (std::size_t i = 0; i < P.rows(); ++i) {
    long double s = -static_cast<long double>(lambda) * x[i];
    for (std::size_t j = 0; j < P.cols(); ++j) s += static_cast<long double>(P(i, j).get_d()) * x[j];
    worst = std::max(worst, static_cast<double>(std::abs(s)));
  }
  return worst;
}

} // namespace detail

inline FvVector fv_vector(const ClassStructure& cs, int cls, EigenMode mode = EigenMode::automatic) {
  if (cls < 0 || cls >= cs.class_count()) throw InputError("no such class");
  if (!cs.distinguished[cls])
    throw InputError("class " + format_one_based(cs.classes[cls]) + " is not distinguished");
  FvVector out;
  out.cls = cls;
  out.lambda = cs.radius[cls];
  IndexSet I = classes::initial_set_of_class(cls, cs);
  RatMatrix Q = cs.matrix.submatrix(I, I);
  const std::size_t n = static_cast<std::size_t>(cs.n);
  if (mode == EigenMode::exact && !out.lambda.exact)
    throw UnsupportedModeError("exact mode requires a rational eigenvalue");
  bool exact = mode == EigenMode::exact || (mode == EigenMode::automatic && out.lambda.exact);

  if (exact) {
    auto rk = ratmath::rank_and_kernel(Q.shifted(*out.lambda.exact));
    if (rk.kernel_basis.size() != 1) throw InternalError("eigenspace of the distinguished block is not a line");
    RatVector local = detail::normalize_max_one(rk.kernel_basis[0]);
    RatVector x(n, Rational(0));
    for (std::size_t k = 0; k < I.size(); ++k) x[I[k]] = local[k];
    for (const auto& v : x)
      if (sgn(v) < 0) throw InternalError("eigenvector of the distinguished block changes sign");
    out.support = support(x);
    out.approx.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.approx[i] = x[i].get_d();
    out.exact = std::move(x);
    return out;
  }

  // Power iteration on Q + I; rho(Q) + 1 is the simple dominant eigenvalue.
  const std::size_t m = I.size();
  std::vector<long double> q(m * m), x(m, 1.0L), y(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) q[i * m + j] = static_cast<long double>(Q(i, j).get_d());
  const double lambda = out.lambda.approx;
  const double target = cs.tol.power_tol * std::max(1.0, lambda);
  std::vector<double> full(n, 0.0);
  auto publish = [&] {
    for (std::size_t k = 0; k < m; ++k) full[I[k]] = static_cast<double>(x[k]);
  };
  bool converged = false;
  for (std::uint64_t it = 0; it < cs.tol.max_iters; ++it) {
    long double top = 0;
    for (std::size_t i = 0; i < m; ++i) {
      long double s = x[i];
      for (std::size_t j = 0; j < m; ++j) s += q[i * m + j] * x[j];
      y[i] = s;
      top = std::max(top, s);
    }
    long double change = 0;
    for (std::size_t i = 0; i < m; ++i) {
      long double v = y[i] / top;
      change = std::max(change, std::abs(v - x[i]));
      x[i] = v;
    }
    if (change <= target) {
      publish();
      if (detail::residual_inf(cs.matrix, full, lambda) <= std::max(target, 1e-12 * std::max(1.0, lambda))) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) throw Error("no convergence");
  out.approx = full;
  out.residual = detail::residual_inf(cs.matrix, full, lambda);
  for (std::size_t i = 0; i < n; ++i)
    if (full[i] > 0) out.support.push_back(static_cast<int>(i));
  return out;
}

// One Frobenius-Victory vector per distinguished class associated with lambda.
inline std::vector<FvVector> eigencone_basis(const ClassStructure& cs, const SpectralValue& lambda,
                                             EigenMode mode = EigenMode::automatic) {
  if (!classes::is_distinguished_eigenvalue(cs, lambda))
    throw InputError("not a distinguished eigenvalue: " + lambda.to_string());
  std::vector<FvVector> out;
  for (int c = 0; c < cs.class_count(); ++c)
    if (cs.distinguished[c] && cs.associated_with(c, lambda)) out.push_back(fv_vector(cs, c, mode));
  std::vector<RatVector> exact;
  for (const auto& v : out)
    if (v.exact) exact.push_back(*v.exact);
  if (exact.size() == out.size() && ratmath::rank_of_vectors(exact) != exact.size())
    throw InternalError("eigencone generators are linearly dependent");
  return out;
}

// ---------------------------------------------------------------------------
// Nonnegative basis of the generalized eigenspace.

struct BasisVector {
  int cls = -1;
  RatVector vector;
  Rational margin; // smallest entry on the support, after normalizing to sum 1
};

inline std::vector<BasisVector> nonnegative_basis(const ClassStructure& cs, const SpectralValue& lambda_value) {
  if (!lambda_value.exact) throw UnsupportedModeError("exact mode requires a rational eigenvalue");
  if (!classes::is_distinguished_eigenvalue(cs, lambda_value))
    throw InputError("not a distinguished eigenvalue: " + lambda_value.to_string());
  const Rational& lambda = *lambda_value.exact;
  std::vector<BasisVector> out;
  for (int c = 0; c < cs.class_count(); ++c) {
    if (!cs.semi_distinguished[c] || !cs.associated_with(c, lambda_value)) continue;
    IndexSet I = classes::initial_set_of_class(c, cs);
    const std::size_t m = I.size();
    RatMatrix Q = cs.matrix.submatrix(I, I);
    auto kernel = ratmath::rank_and_kernel(Q.shifted(lambda).pow(static_cast<unsigned>(m))).kernel_basis;
    const std::size_t d = kernel.size();
    // Variables: coefficients (free, d), t (free), slacks s_i >= 0 (m).
    // Rows: sum_i x_i = 1; x_i - t - s_i = 0.
    RatMatrix A(m + 1, d + 1 + m);
    RatVector b(m + 1, Rational(0));
    b[0] = 1;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < m; ++i) {
        A(0, k) += kernel[k][i];
        A(i + 1, k) = kernel[k][i];
      }
    for (std::size_t i = 0; i < m; ++i) {
      A(i + 1, d) = -1;
      A(i + 1, d + 1 + i) = -1;
    }
    std::vector<std::optional<Rational>> lower(d + 1 + m, Rational(0));
    for (std::size_t k = 0; k <= d; ++k) lower[k] = std::nullopt;
    RatVector objective(d + 1 + m, Rational(0));
    objective[d] = 1;
    auto res = ratmath::lp_solve({A, b, lower, objective, ratmath::LpSense::maximize});
    if (res.status != ratmath::LpStatus::optimal || sgn(res.optimum) <= 0)
      throw InternalError("theorem violation: no positive generalized eigenvector on " + format_one_based(I));
    RatVector x(cs.n, Rational(0));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < m; ++i) x[I[i]] += res.point[k] * kernel[k][i];
    out.push_back({c, std::move(x), res.optimum});
  }
  std::vector<RatVector> vs;
  for (const auto& v : out) vs.push_back(v.vector);
  if (ratmath::rank_of_vectors(vs) != vs.size()) throw InternalError("nonnegative basis is linearly dependent");
  return out;
}

// ---------------------------------------------------------------------------
// Sublevel faces.

// Join of the F_alpha with sp(F_alpha) <= (lambda, k).
inline IndexSet sublevel_face(const ClassStructure& cs, const SpectralValue& lambda, int k) {
  if (lambda.approx < 0 || k < 1) throw InputError("sublevel_face needs lambda >= 0 and k >= 1");
  SpectralPair bound{lambda, k};
  IndexSet out;
  for (int c = 0; c < cs.class_count(); ++c) {
    IndexSet f = classes::initial_set_of_class(c, cs);
    if (spectra::compare(face_spectral_pair(cs, f), bound, cs.tol) <= 0) out = set_union(out, f);
  }
  return out;
}

// Join of the F_alpha with rho(F_alpha) < lambda.
inline IndexSet strict_sublevel_face(const ClassStructure& cs, const SpectralValue& lambda) {
  if (!(lambda.approx > 0)) throw InputError("strict_sublevel_face needs lambda > 0");
  IndexSet out;
  for (int c = 0; c < cs.class_count(); ++c) {
    IndexSet f = classes::initial_set_of_class(c, cs);
    if (spectra::approx_less(face_spectral_pair(cs, f).radius, lambda, cs.tol)) out = set_union(out, f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Condition checkers.

struct Verdict {
  std::optional<bool> value; // empty when the condition needs unsupported exact work
  std::string detail;

  static Verdict of(bool v, std::string d = {}) { return {v, std::move(d)}; }
  static Verdict unsupported(std::string d) { return {std::nullopt, std::move(d)}; }
  bool holds() const { return value.value_or(false); }
};

namespace detail {

inline void require_distinguished(const ClassStructure& cs, const SpectralValue& lambda) {
  if (!classes::is_distinguished_eigenvalue(cs, lambda))
    throw InputError("not a distinguished eigenvalue: " + lambda.to_string());
}

inline std::string pair_text(const IndexSet& a, const IndexSet& b) {
  return format_one_based(a) + " and " + format_one_based(b);
}

// First noncomparable pair in the family, if any.
inline std::optional<std::string> noncomparable_pair(const std::vector<IndexSet>& fam) {
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j)
      if (!comparable(fam[i], fam[j])) return pair_text(fam[i], fam[j]);
  return std::nullopt;
}

struct LatticeView {
  std::vector<IndexSet> faces;
  std::vector<FaceClassification> info;
};

inline LatticeView classified_lattice(const ClassStructure& cs, std::size_t cap) {
  LatticeView v;
  v.faces = classes::enumerate_initial_subsets(cs, cap);
  for (const auto& f : v.faces) v.info.push_back(classify_face(cs, f));
  return v;
}

inline bool gen_eig_at(const FaceClassification& c, const SpectralValue& lambda, const ToleranceConfig& tol) {
  return c.relint_generalized_eigenvector && spectra::approx_equal(*c.eigenvalue, lambda, tol);
}

inline bool semi_at(const FaceClassification& c, const SpectralValue& lambda, const ToleranceConfig& tol) {
  return c.semi_distinguished && spectra::approx_equal(*c.eigenvalue, lambda, tol);
}

inline bool associated(const FaceClassification& c, const SpectralValue& lambda, const ToleranceConfig& tol) {
  return c.nonzero && spectra::approx_equal(c.rho, lambda, tol);
}

} // namespace detail

struct SimpleEigenvectorReport {
  Verdict a, b, c, d, e, f;
  bool implications_consistent = true; // a => b => c => d => e on the verdicts
};

inline SimpleEigenvectorReport check_simple_eigenvector(const ClassStructure& cs, const SpectralValue& lambda, std::size_t cap = 4096) {
  detail::require_distinguished(cs, lambda);
  auto lat = detail::classified_lattice(cs, cap);
  const auto& tol = cs.tol;
  SimpleEigenvectorReport rep;

  if (lambda.exact) {
    auto dim = ratmath::rank_and_kernel(cs.matrix.shifted(*lambda.exact)).kernel_basis.size();
    rep.a = Verdict::of(dim == 1, "dim N(lambda I - P) = " + std::to_string(dim));
  } else {
    rep.a = Verdict::unsupported("eigenspace dimension needs a rational eigenvalue");
  }

  std::vector<IndexSet> gen, semi, assoc;
  std::string reducible;
  for (std::size_t k = 0; k < lat.faces.size(); ++k) {
    const auto& c = lat.info[k];
    if (detail::gen_eig_at(c, lambda, tol)) {
      gen.push_back(c.face);
      if (!c.semi_distinguished && reducible.empty()) reducible = format_one_based(c.face) + " is join-reducible";
    }
    if (detail::semi_at(c, lambda, tol)) semi.push_back(c.face);
    if (detail::associated(c, lambda, tol)) assoc.push_back(c.face);
  }
  rep.b = Verdict::of(reducible.empty(), reducible);
  auto nc = detail::noncomparable_pair(gen);
  rep.c = Verdict::of(!nc, nc ? "noncomparable: " + *nc : "");
  auto nd = detail::noncomparable_pair(semi);
  rep.d = Verdict::of(!nd, nd ? "noncomparable: " + *nd : "");
  auto basis = eigencone_basis(cs, lambda, EigenMode::automatic);
  rep.e = Verdict::of(basis.size() == 1, "dim span(N(lambda I - P) cap orthant) = " + std::to_string(basis.size()));
  auto nf = detail::noncomparable_pair(assoc);
  rep.f = Verdict::of(!nf, nf ? "noncomparable: " + *nf : "");

  const Verdict* chain[] = {&rep.a, &rep.b, &rep.c, &rep.d, &rep.e};
  for (int i = 0; i + 1 < 5; ++i)
    if (chain[i]->value && chain[i + 1]->value && *chain[i]->value && !*chain[i + 1]->value)
      rep.implications_consistent = false;
  return rep;
}

struct UnitOrderReport {
  Verdict a, b;
  int m_lambda = 0;
};

inline UnitOrderReport check_unit_order(const ClassStructure& cs, const SpectralValue& lambda, std::size_t cap = 4096) {
  auto chain = classes::longest_semidistinguished_chain(cs, lambda);
  auto lat = detail::classified_lattice(cs, cap);
  UnitOrderReport rep;
  rep.m_lambda = chain.length;
  rep.a = Verdict::of(chain.length == 1, "m_lambda = " + std::to_string(chain.length));
  std::vector<IndexSet> semi;
  for (const auto& c : lat.info)
    if (detail::semi_at(c, lambda, cs.tol)) semi.push_back(c.face);
  std::string witness;
  for (std::size_t i = 0; i < semi.size() && witness.empty(); ++i)
    for (std::size_t j = i + 1; j < semi.size() && witness.empty(); ++j)
      if (comparable(semi[i], semi[j])) witness = "comparable: " + detail::pair_text(semi[i], semi[j]);
  rep.b = Verdict::of(witness.empty(), witness);
  return rep;
}

// ---------------------------------------------------------------------------
// The cone C = orthant cap N((lambda I - P)^n) and its faces.

// Faces of C are C cap F_J; each is identified by the union of the supports
// of its vectors. Extreme rays are the nonnegative kernel vectors of minimal
// support.
struct GeneralizedEigencone {
  std::vector<RatVector> rays;
  std::vector<IndexSet> ray_supports;

  // Support of the face C cap F_J.
  IndexSet face_support(const IndexSet& J) const {
    IndexSet out;
    for (const auto& s : ray_supports)
      if (is_subset(s, J)) out = set_union(out, s);
    return out;
  }
};

inline GeneralizedEigencone generalized_eigencone(const RatMatrix& P, const Rational& lambda, std::size_t cap = 4096) {
  const int n = static_cast<int>(P.rows());
  if (n > 20 || (std::size_t{1} << n) > cap * 16)
    throw CapExceededError("support enumeration too large for n = " + std::to_string(n));
  RatMatrix M = P.shifted(lambda).pow(static_cast<unsigned>(n));
  GeneralizedEigencone C;
  // Increasing cardinality, so minimality is checked against found rays.
  std::vector<unsigned> masks;
  for (unsigned mask = 1; mask < (1u << n); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  for (unsigned mask : masks) {
    IndexSet S;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) S.push_back(i);
    bool contains_ray = false;
    for (const auto& r : C.ray_supports)
      if (is_subset(r, S)) contains_ray = true;
    if (contains_ray) continue;
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    auto rk = ratmath::rank_and_kernel(M.submatrix(all, S));
    if (rk.kernel_basis.size() != 1) continue;
    RatVector v = rk.kernel_basis[0];
    int pos = 0, neg = 0;
    for (const auto& x : v) {
      if (sgn(x) > 0) ++pos;
      if (sgn(x) < 0) ++neg;
    }
    if (pos + neg != static_cast<int>(S.size()) || (pos > 0 && neg > 0)) continue;
    RatVector ray(n, Rational(0));
    for (std::size_t k = 0; k < S.size(); ++k) ray[S[k]] = neg > 0 ? Rational(-v[k]) : v[k];
    C.rays.push_back(detail::normalize_max_one(ray));
    C.ray_supports.push_back(S);
  }
  return C;
}

struct EigenconeFaceReport {
  Verdict a_i, a_ii, b_i, b_ii, b_iii, c;
};

inline EigenconeFaceReport check_eigencone_faces(const ClassStructure& cs, const SpectralValue& lambda,
                                              std::size_t cap = 4096) {
  detail::require_distinguished(cs, lambda);
  auto lat = detail::classified_lattice(cs, cap);
  const auto& tol = cs.tol;
  const std::size_t F = lat.faces.size();
  EigenconeFaceReport rep;

  auto semi_below = [&](std::size_t k) {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < F; ++g)
      if (detail::semi_at(lat.info[g], lambda, tol) && is_subset(lat.faces[g], lat.faces[k])) out.push_back(g);
    return out;
  };
  auto same_pair_semi_below = [&](std::size_t k) {
    for (std::size_t g : semi_below(k))
      if (spectra::pair_equal(lat.info[g].pair, lat.info[k].pair, tol)) return true;
    return false;
  };

  // (a)(i) and (c): faces with a generalized eigenvector in the relative interior.
  std::string fail_ai, fail_c;
  for (std::size_t k = 0; k < F; ++k) {
    if (!detail::gen_eig_at(lat.info[k], lambda, tol)) continue;
    IndexSet join;
    for (std::size_t g : semi_below(k)) join = set_union(join, lat.faces[g]);
    if (join != lat.faces[k] && fail_ai.empty()) fail_ai = format_one_based(lat.faces[k]) + " is not such a join";
    if (!same_pair_semi_below(k) && fail_c.empty()) fail_c = format_one_based(lat.faces[k]);
  }
  rep.a_i = Verdict::of(fail_ai.empty(), fail_ai);
  rep.c = Verdict::of(fail_c.empty(), fail_c.empty() ? "" : "no semi-distinguished subface with the pair of " + fail_c);

  // (b): nonzero faces associated with lambda.
  std::string fail_bi, fail_biii;
  for (std::size_t k = 0; k < F; ++k) {
    if (!detail::associated(lat.info[k], lambda, tol)) continue;
    if (!same_pair_semi_below(k) && fail_bi.empty()) fail_bi = format_one_based(lat.faces[k]);
    bool strictly_above = true;
    for (std::size_t g = 0; g < F; ++g)
      if (is_proper_subset(lat.faces[g], lat.faces[k]) &&
          spectra::compare(lat.info[g].pair, lat.info[k].pair, tol) >= 0)
        strictly_above = false;
    if (strictly_above && !lat.info[k].semi_distinguished && fail_biii.empty())
      fail_biii = format_one_based(lat.faces[k]);
  }
  rep.b_i = Verdict::of(fail_bi.empty(), fail_bi.empty() ? "" : "no semi-distinguished subface with the pair of " + fail_bi);
  rep.b_iii = Verdict::of(fail_biii.empty(), fail_biii.empty() ? "" : fail_biii + " dominates its subfaces but is not semi-distinguished");

  if (!lambda.exact) {
    rep.a_ii = Verdict::unsupported("needs a rational eigenvalue");
    rep.b_ii = Verdict::unsupported("needs a rational eigenvalue");
    return rep;
  }
  const Rational& lam = *lambda.exact;

  // (b)(ii): an order-nu witness inside every face associated with lambda.
  std::string fail_bii;
  for (std::size_t k = 0; k < F && fail_bii.empty(); ++k) {
    if (!detail::associated(lat.info[k], lambda, tol)) continue;
    const IndexSet& I = lat.faces[k];
    RatMatrix Q = cs.matrix.submatrix(I, I);
    int nu = ratmath::rank_profile_at(Q, lam).index;
    if (!ratmath::order_witness(Q.shifted(lam), RatMatrix::identity(I.size()), nu))
      fail_bii = format_one_based(I) + " has no generalized eigenvector of order " + std::to_string(nu);
  }
  rep.b_ii = Verdict::of(fail_bii.empty(), fail_bii);

  // (a)(ii): semi-distinguished invariant faces of C for the restriction B.
  // Every nonzero vector of C is a generalized eigenvector of B for lambda, so
  // these are the nonzero join-irreducible B-invariant faces of C.
  auto C = generalized_eigencone(cs.matrix, lam, cap);
  std::vector<IndexSet> cfaces;
  {
    std::vector<IndexSet> frontier{IndexSet{}};
    cfaces.push_back({});
    while (!frontier.empty()) {
      std::vector<IndexSet> next;
      for (const auto& f : frontier)
        for (const auto& r : C.ray_supports) {
          IndexSet g = C.face_support(set_union(f, r));
          if (std::find(cfaces.begin(), cfaces.end(), g) == cfaces.end()) {
            cfaces.push_back(g);
            next.push_back(g);
            if (cfaces.size() > cap) throw CapExceededError("face lattice of C too large");
          }
        }
      frontier = std::move(next);
    }
  }
  auto b_invariant = [&](const IndexSet& s) {
    for (std::size_t r = 0; r < C.rays.size(); ++r)
      if (is_subset(C.ray_supports[r], s) && !is_subset(support(cs.matrix * C.rays[r]), s)) return false;
    return true;
  };
  std::vector<IndexSet> inv;
  for (const auto& f : cfaces)
    if (b_invariant(f)) inv.push_back(f);
  std::string fail_aii;
  for (const auto& f : inv) {
    if (f.empty()) continue;
    IndexSet below;
    for (const auto& g : inv)
      if (is_proper_subset(g, f)) below = set_union(below, g);
    if (C.face_support(below) == f) continue; // join-reducible in the invariant lattice of C
    FaceClassification phi = classify_face(cs, f);
    if (!(phi.invariant && detail::semi_at(phi, lambda, tol)) && fail_aii.empty())
      fail_aii = "Phi(" + format_one_based(f) + ") is not semi-distinguished";
  }
  rep.a_ii = Verdict::of(fail_aii.empty(), fail_aii);
  return rep;
}

} // namespace conefaces::orthant
