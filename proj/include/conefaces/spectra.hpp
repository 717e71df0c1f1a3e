#pragma once

#include "conefaces/minpoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conefaces::spectra {

using ratmath::Rational;
using ratmath::RatMatrix;
using ratmath::RatPoly;
using ratmath::RatVector;

struct ToleranceConfig {
  double rel_eps = 1e-9;
  double power_tol = 1e-12;
  std::uint64_t max_iters = 1'000'000;
  std::uint64_t retry_seed = 1;

  void validate() const {
    if (!(rel_eps > 0) || !(power_tol > 0) || max_iters < 1 || retry_seed < 1)
      throw InputError("tolerance settings must be strictly positive");
  }
};

// A nonnegative real that is exact when provably rational.
struct SpectralValue {
  double approx = 0;
  std::optional<Rational> exact;

  static SpectralValue of(const Rational& r) { return {r.get_d(), r}; }
  static SpectralValue numeric(double v) { return {v, std::nullopt}; }

  bool is_exact() const { return exact.has_value(); }
  double error_bound(const ToleranceConfig& tol) const {
    return exact ? 0.0 : tol.rel_eps * std::max(1.0, std::abs(approx));
  }
  std::string to_string() const {
    if (exact) return ratmath::to_string(*exact);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", approx);
    return buf;
  }
};

// a ~ b iff |a - b| <= rel_eps * max(1, |a|, |b|); exact values compare exactly.
inline bool approx_equal(const SpectralValue& a, const SpectralValue& b, const ToleranceConfig& tol) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  double scale = std::max({1.0, std::abs(a.approx), std::abs(b.approx)});
  return std::abs(a.approx - b.approx) <= tol.rel_eps * scale;
}

inline bool approx_less(const SpectralValue& a, const SpectralValue& b, const ToleranceConfig& tol) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  return !approx_equal(a, b, tol) && a.approx < b.approx;
}

// Margin of a comparison, reported alongside tolerance-decided verdicts.
inline double margin(const SpectralValue& a, const SpectralValue& b) { return std::abs(a.approx - b.approx); }

struct SpectralPair {
  SpectralValue radius;
  int order = 0;

  static SpectralPair zero() { return {SpectralValue::of(Rational(0)), 0}; }
};

// Lexicographic comparison: -1, 0, +1.
inline int compare(const SpectralPair& a, const SpectralPair& b, const ToleranceConfig& tol) {
  if (!approx_equal(a.radius, b.radius, tol)) return a.radius.approx < b.radius.approx ? -1 : 1;
  return a.order < b.order ? -1 : (a.order > b.order ? 1 : 0);
}

inline bool pair_equal(const SpectralPair& a, const SpectralPair& b, const ToleranceConfig& tol) {
  return compare(a, b, tol) == 0;
}

inline const SpectralPair& pair_max(const SpectralPair& a, const SpectralPair& b, const ToleranceConfig& tol) {
  return compare(a, b, tol) >= 0 ? a : b;
}

// ---------------------------------------------------------------------------
// Roots.

struct RootInfo {
  std::complex<double> value;
  double modulus = 0;
  bool real = false;
  std::optional<Rational> exact; // rational roots only
  int multiplicity = 0;          // multiplicity in the analysed polynomial
};

namespace detail {

using cld = std::complex<long double>;

inline std::vector<cld> aberth_roots(const RatPoly& f, const ToleranceConfig& tol) {
  const int d = f.degree();
  std::vector<long double> c(d + 1);
  for (int k = 0; k <= d; ++k) c[k] = static_cast<long double>(f.coeffs()[k].get_d());
  if (d == 1) return {cld(-c[0] / c[1], 0)};

  auto eval = [&](cld z, cld& dp) {
    cld p = c[d];
    dp = 0;
    for (int k = d - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[k];
    }
    return p;
  };
  long double bound = 0;
  for (int k = 0; k < d; ++k) bound = std::max(bound, std::abs(c[k] / c[d]));
  bound = std::min<long double>(bound + 1, 1e6L);
  const long double pi = 3.14159265358979323846264338327950288L;
  std::vector<cld> z(d);
  for (int k = 0; k < d; ++k) z[k] = std::polar(bound * 0.5L + 0.1L, 2 * pi * k / d + 0.4L);

  const std::uint64_t cap = std::min<std::uint64_t>(tol.max_iters, 5000);
  bool converged = false;
  for (std::uint64_t it = 0; it < cap && !converged; ++it) {
    converged = true;
    for (int k = 0; k < d; ++k) {
      cld dp;
      cld p = eval(z[k], dp);
      if (std::abs(p) == 0) continue;
      cld ratio = p / dp;
      cld s = 0;
      for (int j = 0; j < d; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      cld w = ratio / (1.0L - ratio * s);
      if (!std::isfinite(std::abs(w))) w = ratio;
      z[k] -= w;
      if (std::abs(w) > 1e-17L * std::max<long double>(1, std::abs(z[k]))) converged = false;
    }
  }
  // A few Newton polishing steps; roots are simple on squarefree input.
  for (auto& r : z)
    for (int it = 0; it < 3; ++it) {
      cld dp;
      cld p = eval(r, dp);
      if (std::abs(dp) == 0) break;
      r -= p / dp;
    }
  if (!converged) {
    for (auto& r : z) {
      cld dp;
      cld p = eval(r, dp);
      long double scale = 0, pw = 1;
      for (int k = 0; k <= d; ++k) {
        scale += std::abs(c[k]) * pw;
        pw *= std::max<long double>(1, std::abs(r));
      }
      if (std::abs(p) > 1e-10L * scale) throw Error("no convergence");
    }
  }
  return z;
}

// Refined double value and exactness of a real root in an isolating interval.
inline std::pair<double, std::optional<Rational>> resolve_real_root(const RatPoly& f, ratmath::RootInterval iv) {
  using namespace ratmath;
  Integer den_lcm = 1;
  for (const auto& a : f.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den_mpz_t());
  Integer an = abs(Rational(f.leading() * den_lcm).get_num());
  Rational width(Integer(1), 2 * an);
  iv = refine_root(f, iv, width);
  if (iv.lo == iv.hi) return {iv.lo.get_d(), iv.lo};
  Rational slo = iv.lo * an;
  Integer k;
  mpz_cdiv_q(k.get_mpz_t(), slo.get_num_mpz_t(), slo.get_den_mpz_t());
  for (; Rational(k) <= iv.hi * an; ++k) {
    Rational cand(k, an);
    cand.canonicalize();
    if (cand > iv.lo && cand <= iv.hi && sgn(f(cand)) == 0) return {cand.get_d(), cand};
  }
  Rational scale = std::max(Rational(abs(iv.lo)), Rational(abs(iv.hi)));
  Rational fine = scale * Rational(1, Integer(1) << 60);
  if (fine == 0) fine = Rational(1, Integer(1) << 60);
  iv = refine_root(f, iv, fine);
  return {Rational((iv.lo + iv.hi) / 2).get_d(), iv.lo == iv.hi ? std::optional<Rational>(iv.lo) : std::nullopt};
}

} // namespace detail

// Every root of a squarefree polynomial: real roots through Sturm isolation
// (rational ones exactly), non-real roots through Aberth iteration.
inline std::vector<RootInfo> squarefree_roots(const RatPoly& f, const ToleranceConfig& tol) {
  std::vector<RootInfo> out;
  if (f.degree() <= 0) return out;
  auto intervals = ratmath::isolate_real_roots(f);
  for (const auto& iv : intervals) {
    auto [v, ex] = detail::resolve_real_root(f, iv);
    out.push_back({{v, 0.0}, std::abs(v), true, ex, 1});
  }
  const int nonreal = f.degree() - static_cast<int>(intervals.size());
  if (nonreal > 0) {
    auto z = detail::aberth_roots(f, tol);
    std::sort(z.begin(), z.end(), [](const auto& a, const auto& b) { return std::abs(a.imag()) > std::abs(b.imag()); });
    for (int k = 0; k < nonreal; ++k) {
      std::complex<double> v(static_cast<double>(z[k].real()), static_cast<double>(z[k].imag()));
      out.push_back({v, std::abs(v), false, std::nullopt, 1});
    }
  }
  return out;
}

// All roots of p with their multiplicities.
inline std::vector<RootInfo> root_table(const RatPoly& p, const ToleranceConfig& tol) {
  std::vector<RootInfo> out;
  for (const auto& [f, m] : ratmath::squarefree_decompose(p))
    for (auto r : squarefree_roots(f, tol)) {
      r.multiplicity = m;
      out.push_back(r);
    }
  return out;
}

namespace detail {

inline SpectralValue modulus_value(const RootInfo& r) {
  if (r.exact) return SpectralValue::of(abs(*r.exact));
  return SpectralValue::numeric(r.modulus);
}

// Largest modulus over the table; exact when a rational root attains it.
inline SpectralValue max_modulus(const std::vector<RootInfo>& roots, const ToleranceConfig& tol) {
  if (roots.empty()) return SpectralValue::of(Rational(0));
  double best = 0;
  for (const auto& r : roots) best = std::max(best, r.modulus);
  SpectralValue v = SpectralValue::numeric(best);
  for (const auto& r : roots)
    if (r.exact && approx_equal(modulus_value(r), v, tol)) return modulus_value(r);
  return v;
}

} // namespace detail

inline SpectralValue max_root_modulus(const RatPoly& p, const ToleranceConfig& tol = {}) {
  if (p.degree() < 1) throw InputError("max_root_modulus needs a polynomial of degree >= 1");
  return detail::max_modulus(root_table(p, tol), tol);
}

// ---------------------------------------------------------------------------
// Perron root of a nonnegative matrix.

namespace detail {

inline std::optional<Rational> constant_row_sum(const RatMatrix& B) {
  Rational s = 0;
  for (std::size_t j = 0; j < B.cols(); ++j) s += B(0, j);
  for (std::size_t i = 1; i < B.rows(); ++i) {
    Rational t = 0;
    for (std::size_t j = 0; j < B.cols(); ++j) t += B(i, j);
    if (t != s) return std::nullopt;
  }
  return s;
}

struct Bracket {
  double lo = 0, hi = 0;
};

// Power iteration on B + I with Collatz-Wielandt bounds for B.
inline Bracket collatz_wielandt_bracket(const RatMatrix& B, const ToleranceConfig& tol) {
  const std::size_t n = B.rows();
  std::vector<long double> b(n * n), x(n, 1.0L), y(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = static_cast<long double>(B(i, j).get_d());
  Bracket br{0, 0};
  const std::uint64_t cap = std::min<std::uint64_t>(tol.max_iters, 4000);
  for (std::uint64_t it = 0; it < cap; ++it) {
    long double lo = INFINITY, hi = 0, norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += b[i * n + j] * x[j];
      long double ratio = s / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      y[i] = s + x[i];
      norm = std::max(norm, y[i]);
    }
    br = {static_cast<double>(lo), static_cast<double>(hi)};
    if (hi - lo <= tol.power_tol * std::max<long double>(1, hi)) break;
    for (std::size_t i = 0; i < n; ++i) x[i] = std::max(y[i] / norm, 1e-300L);
  }
  return br;
}

} // namespace detail

// rho(B) for entrywise nonnegative B. Shortcuts for 1x1 and constant row
// sums; otherwise a Collatz-Wielandt bracket from power iteration, then the
// largest real root of the minimal polynomial is isolated exactly inside it.
inline SpectralValue perron_root(const RatMatrix& B, const ToleranceConfig& tol = {}) {
  if (!B.square() || B.rows() == 0) throw InputError("perron_root: matrix must be square and nonempty");
  if (!B.is_nonnegative()) throw InputError("not a nonnegative matrix");
  if (B.rows() == 1) return SpectralValue::of(B(0, 0));
  if (auto s = detail::constant_row_sum(B)) return SpectralValue::of(*s);

  RatPoly f = ratmath::squarefree_part(ratmath::minimal_polynomial(B));
  auto br = detail::collatz_wielandt_bracket(B, tol);
  ratmath::SturmSequence sturm(f);
  Rational bound = ratmath::root_bound(f);
  Rational lo = ratmath::from_double(br.lo * (1 - 1e-9) - 1e-12);
  Rational hi = ratmath::from_double(br.hi * (1 + 1e-9) + 1e-12);
  std::vector<ratmath::RootInterval> ivs;
  if (hi < bound && sturm.count(hi, bound) == 0 && sturm.count(lo, hi) > 0) {
    ratmath::detail::isolate(sturm, lo, hi, ivs);
  } else {
    ivs = ratmath::isolate_real_roots(f);
  }
  if (ivs.empty()) throw InternalError("nonnegative matrix without a real eigenvalue");
  auto [v, ex] = detail::resolve_real_root(f, ivs.back());
  if (ex) return SpectralValue::of(*ex);
  return SpectralValue::numeric(v);
}

// ---------------------------------------------------------------------------
// Spectral pairs.

struct LocalSpectrum {
  SpectralPair pair;
  bool attained_at_real_radius = false; // max order realised by the real root rho_x
};

inline LocalSpectrum local_spectrum(const RatMatrix& A, const RatVector& x, const ToleranceConfig& tol) {
  if (!A.square() || A.rows() != x.size()) throw InputError("spectral_pair: dimension mismatch");
  if (ratmath::is_zero(x)) return {SpectralPair::zero(), true};
  RatPoly mu = ratmath::local_minimal_polynomial(A, x);
  auto roots = root_table(mu, tol);
  SpectralValue rho = detail::max_modulus(roots, tol);
  int order = 0, real_order = 0;
  for (const auto& r : roots) {
    if (!approx_equal(detail::modulus_value(r), rho, tol)) continue;
    order = std::max(order, r.multiplicity);
    if (r.real && r.value.real() >= -tol.rel_eps) real_order = std::max(real_order, r.multiplicity);
  }
  return {{rho, order}, real_order == order};
}

inline SpectralPair spectral_pair(const RatMatrix& A, const RatVector& x, const ToleranceConfig& tol = {}) {
  return local_spectrum(A, x, tol).pair;
}

struct OrderWitness {
  int order = 0;
  bool attained_at_real_radius = false;
};

// ord_A(x), plus whether the peripheral factor of maximal multiplicity has
// the real root rho_x itself.
inline OrderWitness max_order_in_representation(const RatMatrix& A, const RatVector& x, const ToleranceConfig& tol = {}) {
  if (ratmath::is_zero(x)) throw InputError("max_order_in_representation needs a nonzero vector");
  auto ls = local_spectrum(A, x, tol);
  return {ls.pair.order, ls.attained_at_real_radius};
}

struct PeripheralReport {
  SpectralValue spectral_radius;
  int index_at_radius = 0; // 0 when rho(A) is not an eigenvalue
  std::optional<int> maximal_block_count; // mu, when rho(A) is rational
  std::vector<double> peripheral_moduli;
  struct RationalEigenvalue {
    Rational value;
    int index = 0;
  };
  std::vector<RationalEigenvalue> rational_eigenvalues;
  bool perron_schaefer = false;
  bool tie_flagged = false; // some peripheral modulus matched only within tolerance
};

inline PeripheralReport peripheral_report(const RatMatrix& A, const ToleranceConfig& tol = {}) {
  if (!A.square()) throw InputError("peripheral_report: matrix must be square");
  RatPoly m = ratmath::minimal_polynomial(A);
  auto roots = root_table(m, tol);
  PeripheralReport rep;
  rep.spectral_radius = detail::max_modulus(roots, tol);
  int max_mult = 0;
  for (const auto& r : roots) {
    SpectralValue mv = detail::modulus_value(r);
    if (!approx_equal(mv, rep.spectral_radius, tol)) continue;
    if (!(mv.exact && rep.spectral_radius.exact) && mv.approx != rep.spectral_radius.approx) rep.tie_flagged = true;
    rep.peripheral_moduli.push_back(r.modulus);
    max_mult = std::max(max_mult, r.multiplicity);
    if (r.real && approx_equal(SpectralValue::numeric(r.value.real()), rep.spectral_radius, tol) &&
        r.value.real() >= -tol.rel_eps)
      rep.index_at_radius = std::max(rep.index_at_radius, r.multiplicity);
  }
  rep.perron_schaefer = rep.index_at_radius > 0 && max_mult <= rep.index_at_radius;
  for (const auto& r : roots)
    if (r.exact) rep.rational_eigenvalues.push_back({*r.exact, r.multiplicity});
  std::sort(rep.rational_eigenvalues.begin(), rep.rational_eigenvalues.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  if (rep.spectral_radius.exact && rep.index_at_radius > 0)
    rep.maximal_block_count = ratmath::rank_profile_at(A, *rep.spectral_radius.exact).maximal_block_count;
  return rep;
}

// (A - rho_x I)^(m-1) E x with E the spectral projector at rho_x, m = ord_A(x).
inline RatVector extract_distinguished_eigenvector(const RatMatrix& A, const RatVector& x, const ToleranceConfig& tol = {}) {
  if (ratmath::is_zero(x)) throw InputError("distinguished eigenvector of the zero vector");
  SpectralPair sp = spectral_pair(A, x, tol);
  if (!sp.radius.exact) throw UnsupportedModeError("exact mode requires rational local spectral radius");
  const Rational& rho = *sp.radius.exact;
  RatVector y = ratmath::spectral_projector(A, rho) * x;
  RatMatrix N = A.shifted(rho);
  for (int k = 1; k < sp.order; ++k) y = N * y;
  if (ratmath::is_zero(y)) throw InternalError("projected vector vanished");
  return y;
}

} // namespace conefaces::spectra
