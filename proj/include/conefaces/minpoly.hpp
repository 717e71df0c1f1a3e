#pragma once

#include "conefaces/polynomial.hpp"

#include <vector>

namespace conefaces::ratmath {

// Monic least-degree p with p(A) x = 0, found from the first linear
// dependence in the Krylov sequence x, Ax, A^2 x, ...  Returns the constant
// polynomial 1 when x = 0.
inline RatPoly local_minimal_polynomial(const RatMatrix& A, const RatVector& x) {
  if (!A.square() || A.rows() != x.size()) throw InputError("local minimal polynomial: dimension mismatch");
  const std::size_t n = x.size();
  if (is_zero(x)) return RatPoly::constant(1);

  // Incremental elimination. Each reduced row carries its combination of
  // Krylov vectors so the dependence can be read off directly.
  struct Row {
    RatVector v;      // reduced vector
    RatVector combo;  // coefficients over x, Ax, ...
    std::size_t pivot;
  };
  std::vector<Row> rows;
  RatVector current = x;
  for (std::size_t k = 0; k <= n; ++k) {
    RatVector v = current, combo(n + 1, Rational(0));
    combo[k] = 1;
    for (const auto& r : rows) {
      if (sgn(v[r.pivot]) == 0) continue;
      Rational f = v[r.pivot];
      for (std::size_t i = 0; i < n; ++i) v[i] -= f * r.v[i];
      for (std::size_t i = 0; i <= n; ++i) combo[i] -= f * r.combo[i];
    }
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(v[i]) != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) {
      combo.resize(k + 1);
      return RatPoly(std::move(combo)).monic();
    }
    Rational inv = 1 / v[pivot];
    for (auto& e : v) e *= inv;
    for (auto& e : combo) e *= inv;
    rows.push_back({std::move(v), std::move(combo), pivot});
    current = A * current;
  }
  throw InternalError("Krylov sequence failed to become dependent");
}

// lcm of the local minimal polynomials of the standard basis vectors.
inline RatPoly minimal_polynomial(const RatMatrix& A) {
  if (!A.square()) throw InputError("minimal polynomial of a non-square matrix");
  RatPoly m = RatPoly::constant(1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    RatVector e = unit_vector(A.rows(), i);
    // Skip vectors already annihilated by the running lcm.
    if (is_zero(m.apply(A, e))) continue;
    m = lcm(m, local_minimal_polynomial(A, e));
  }
  return m;
}

// Characteristic polynomial det(tI - A) via Faddeev-LeVerrier.
inline RatPoly characteristic_polynomial(const RatMatrix& A) {
  const std::size_t n = A.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RatMatrix M(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    M = A * M;
    for (std::size_t i = 0; i < n; ++i) M(i, i) += c[n - k + 1];
    RatMatrix AM = A * M;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return RatPoly(std::move(c));
}

// Projector onto the generalized eigenspace of lambda along the others:
// E = h(A) with h = 1 mod (t - lambda)^k and h = 0 mod q, m = (t-lambda)^k q.
inline RatMatrix spectral_projector(const RatMatrix& A, const Rational& lambda) {
  RatPoly m = minimal_polynomial(A);
  int k = root_multiplicity(m, lambda);
  if (k == 0) throw InputError("not an eigenvalue: " + to_string(lambda));
  RatPoly pk = RatPoly::constant(1);
  for (int i = 0; i < k; ++i) pk = pk * RatPoly::linear_root(lambda);
  RatPoly q = divmod(m, pk).quotient;
  // s * pk + t * q = 1
  ExtendedGcd eg = extended_gcd(pk, q);
  RatPoly h = eg.t * q;
  return h(A);
}

struct RankProfile {
  int index = 0;                 // nu: least k with rank N^k = rank N^(k+1)
  int geometric_multiplicity = 0;
  int maximal_block_count = 0;   // mu
  std::vector<std::size_t> ranks; // rank (A - lambda I)^k for k = 0..index
};

inline RankProfile rank_profile_at(const RatMatrix& A, const Rational& lambda) {
  if (!A.square()) throw InputError("rank profile of a non-square matrix");
  const std::size_t n = A.rows();
  RatMatrix N = A.shifted(lambda);
  RankProfile out;
  out.ranks.push_back(n);
  RatMatrix power = N;
  std::size_t prev = n;
  for (std::size_t k = 1; k <= n + 1; ++k) {
    std::size_t r = rank(power);
    if (r == prev) break;
    out.ranks.push_back(r);
    prev = r;
    power = power * N;
  }
  out.index = static_cast<int>(out.ranks.size()) - 1;
  if (out.index == 0) throw InputError("not an eigenvalue: " + to_string(lambda));
  out.geometric_multiplicity = static_cast<int>(n - out.ranks[1]);
  out.maximal_block_count = static_cast<int>(out.ranks[out.index - 1] - out.ranks[out.index]);
  return out;
}

} // namespace conefaces::ratmath
