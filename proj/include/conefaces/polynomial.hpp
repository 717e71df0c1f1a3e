#pragma once

#include "conefaces/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace conefaces::ratmath {

// Univariate polynomial over Q, coefficients in ascending degree.
// The zero polynomial has no coefficients.
class RatPoly {
public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  RatPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static RatPoly constant(const Rational& a) { return RatPoly({a}); }
  // t - a
  static RatPoly linear_root(const Rational& a) { return RatPoly({-a, Rational(1)}); }
  static RatPoly monomial(std::size_t k) {
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = 1;
    return RatPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  RatPoly monic() const {
    if (is_zero()) return *this;
    RatPoly r = *this;
    Rational inv = 1 / leading();
    for (auto& x : r.c_) x *= inv;
    return r;
  }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // p(A) by Horner.
  RatMatrix operator()(const RatMatrix& A) const {
    RatMatrix acc(A.rows(), A.cols());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * A;
      for (std::size_t i = 0; i < A.rows(); ++i) acc(i, i) += *it;
    }
    return acc;
  }

  // p(A) x without forming p(A).
  RatVector apply(const RatMatrix& A, const RatVector& x) const {
    RatVector acc(x.size(), Rational(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = A * acc;
      for (std::size_t i = 0; i < x.size(); ++i) acc[i] += *it * x[i];
    }
    return acc;
  }

  RatPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return RatPoly(std::move(d));
  }

  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
    return RatPoly(std::move(r));
  }
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] -= b.c_[k];
    return RatPoly(std::move(r));
  }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(r));
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const Rational& a = c_[k];
      if (sgn(a) == 0) continue;
      Rational mag = abs(a);
      if (!out.empty()) out += sgn(a) < 0 ? " - " : " + ";
      else if (sgn(a) < 0) out += "-";
      bool unit = mag == 1 && k > 0;
      if (!unit) out += ratmath::to_string(mag);
      if (k > 0) out += (unit ? "" : "*") + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return out;
  }

private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct PolyDivision {
  RatPoly quotient, remainder;
};

inline PolyDivision divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPoly{}, a};
  std::vector<Rational> q(a.degree() - db + 1, Rational(0));
  Rational inv = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational f = rem[k] * inv;
    q[k - db] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeffs()[j];
  }
  rem.resize(db);
  return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
}

inline bool divides(const RatPoly& d, const RatPoly& p) { return divmod(p, d).remainder.is_zero(); }

// Monic gcd; gcd(0, 0) = 0.
inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline RatPoly lcm(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return divmod(a * b, gcd(a, b)).quotient.monic();
}

struct ExtendedGcd {
  RatPoly g, s, t; // s*a + t*b = g, g monic
};

inline ExtendedGcd extended_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly r0 = a, r1 = b, s0 = RatPoly::constant(1), s1{}, t0{}, t1 = RatPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.leading();
  auto sc = RatPoly::constant(inv);
  return {r0 * sc, s0 * sc, t0 * sc};
}

struct SquareFreeFactor {
  RatPoly factor; // monic, squarefree
  int multiplicity = 0;
};

using SquareFreeDecomposition = std::vector<SquareFreeFactor>;

// Yun's algorithm. Factors of degree zero are omitted.
inline SquareFreeDecomposition squarefree_decompose(const RatPoly& p) {
  if (p.is_zero()) throw InputError("square-free decomposition of the zero polynomial");
  SquareFreeDecomposition out;
  RatPoly f = p.monic();
  if (f.degree() == 0) return out;
  RatPoly df = f.derivative();
  RatPoly a = gcd(f, df);
  RatPoly b = divmod(f, a).quotient;
  RatPoly c = divmod(df, a).quotient;
  RatPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RatPoly g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g.monic(), i});
    b = divmod(b, g).quotient;
    c = divmod(d, g).quotient;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

inline RatPoly squarefree_part(const RatPoly& p) {
  RatPoly out = RatPoly::constant(1);
  for (const auto& f : squarefree_decompose(p)) out = out * f.factor;
  return out;
}

// ---------------------------------------------------------------------------
// Real roots: Sturm sequences on squarefree polynomials.

class SturmSequence {
public:
  explicit SturmSequence(const RatPoly& squarefree) {
    seq_.push_back(squarefree);
    if (squarefree.degree() <= 0) return;
    seq_.push_back(squarefree.derivative());
    while (seq_.back().degree() > 0) {
      RatPoly r = divmod(seq_[seq_.size() - 2], seq_.back()).remainder;
      if (r.is_zero()) break;
      seq_.push_back(RatPoly::constant(-1) * r);
    }
  }

  // Number of distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const { return changes_at(a) - changes_at(b); }

  int changes_at(const Rational& x) const {
    int changes = 0, last = 0;
    for (const auto& s : seq_) {
      int v = sgn(s(x));
      if (v == 0) continue;
      if (last != 0 && v != last) ++changes;
      last = v;
    }
    return changes;
  }

  const RatPoly& base() const { return seq_.front(); }

private:
  std::vector<RatPoly> seq_;
};

// Cauchy bound: every root has modulus < bound.
inline Rational root_bound(const RatPoly& p) {
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeffs()[k] / p.leading())));
  return m + 1;
}

struct RootInterval {
  Rational lo, hi; // root in (lo, hi], or exactly lo == hi
};

namespace detail {

inline void isolate(const SturmSequence& s, Rational lo, Rational hi, std::vector<RootInterval>& out) {
  int k = s.count(lo, hi);
  if (k == 0) return;
  if (k == 1) {
    out.push_back({lo, hi});
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate(s, lo, mid, out);
  isolate(s, mid, hi, out);
}

} // namespace detail

// Disjoint isolating intervals of the real roots of a squarefree polynomial,
// in increasing order.
inline std::vector<RootInterval> isolate_real_roots(const RatPoly& squarefree) {
  std::vector<RootInterval> out;
  if (squarefree.degree() <= 0) return out;
  SturmSequence s(squarefree);
  Rational b = root_bound(squarefree);
  detail::isolate(s, -b, b, out);
  return out;
}

// Shrinks an isolating interval until hi - lo <= width.
inline RootInterval refine_root(const RatPoly& squarefree, RootInterval iv, const Rational& width) {
  if (iv.lo == iv.hi) return iv;
  int s_hi = sgn(squarefree(iv.hi));
  if (s_hi == 0) return {iv.hi, iv.hi};
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int s_mid = sgn(squarefree(mid));
    if (s_mid == 0) return {mid, mid};
    if (s_mid == s_hi) iv.hi = mid;
    else iv.lo = mid;
  }
  return iv;
}

// Rational roots of a squarefree polynomial: each real root is isolated to
// width below 1/|a_n| after clearing denominators, where a_n is the integer
// leading coefficient; a rational root p/q has q | a_n, so a_n * root is an
// integer and at most two candidates remain to test exactly.
inline std::vector<Rational> rational_roots_squarefree(const RatPoly& f) {
  std::vector<Rational> out;
  if (f.degree() <= 0) return out;
  Integer den_lcm = 1;
  for (const auto& a : f.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den_mpz_t());
  Rational lead = f.leading() * den_lcm;
  Integer an = abs(lead.get_num());
  Rational width(Integer(1), 2 * an);
  for (auto iv : isolate_real_roots(f)) {
    iv = refine_root(f, iv, width);
    if (iv.lo == iv.hi) {
      out.push_back(iv.lo);
      continue;
    }
    Rational scaled_lo = iv.lo * an, scaled_hi = iv.hi * an;
    Integer k;
    mpz_cdiv_q(k.get_mpz_t(), scaled_lo.get_num_mpz_t(), scaled_lo.get_den_mpz_t());
    for (; Rational(k) <= scaled_hi; ++k) {
      Rational cand(k, an);
      cand.canonicalize();
      if (cand > iv.lo && cand <= iv.hi && sgn(f(cand)) == 0) {
        out.push_back(cand);
        break;
      }
    }
  }
  return out;
}

struct RootWithMultiplicity {
  Rational value;
  int multiplicity = 0;
};

// All rational roots with multiplicities, ascending.
inline std::vector<RootWithMultiplicity> rational_roots(const RatPoly& p) {
  std::vector<RootWithMultiplicity> out;
  for (const auto& [f, m] : squarefree_decompose(p))
    for (const auto& r : rational_roots_squarefree(f)) out.push_back({r, m});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

// Multiplicity of (t - a) in p.
inline int root_multiplicity(const RatPoly& p, const Rational& a) {
  int m = 0;
  RatPoly q = p;
  RatPoly lin = RatPoly::linear_root(a);
  while (!q.is_zero() && sgn(q(a)) == 0) {
    q = divmod(q, lin).quotient;
    ++m;
  }
  return m;
}

} // namespace conefaces::ratmath
