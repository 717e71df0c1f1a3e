#pragma once

#include "conefaces/lp.hpp"

#include <optional>
#include <vector>

namespace conefaces::ratmath {

// A vector x = G c with c >= 0, sum c = 1, N^k x = 0 and N^(k-1) x != 0, if
// one exists. The nonvanishing is decided by a max and a min LP per
// coordinate of N^(k-1) x over the polytope.
inline std::optional<RatVector> order_witness(const RatMatrix& N, const RatMatrix& G, int k) {
  if (k < 1) throw InputError("order_witness: k must be >= 1");
  const std::size_t m = G.cols();
  if (m == 0) return std::nullopt;
  RatMatrix lower = N.pow(k - 1) * G;
  RatMatrix kill = N * lower;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < kill.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(kill(i, j)) != 0) {
        rows.push_back(i);
        break;
      }
  RatMatrix A(rows.size() + 1, m);
  RatVector b(rows.size() + 1, Rational(0));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t j = 0; j < m; ++j) A(r, j) = kill(rows[r], j);
  for (std::size_t j = 0; j < m; ++j) A(rows.size(), j) = 1;
  b[rows.size()] = 1;

  for (std::size_t i = 0; i < lower.rows(); ++i) {
    RatVector c(m);
    bool nonzero_row = false;
    for (std::size_t j = 0; j < m; ++j) {
      c[j] = lower(i, j);
      nonzero_row = nonzero_row || sgn(c[j]) != 0;
    }
    if (!nonzero_row) continue;
    for (LpSense sense : {LpSense::maximize, LpSense::minimize}) {
      auto res = lp_solve(LpProblem::nonnegative(A, b, c, sense));
      if (res.status == LpStatus::infeasible) return std::nullopt;
      if (res.status == LpStatus::optimal && sgn(res.optimum) == 0) continue;
      if (res.status != LpStatus::optimal) throw InternalError("order_witness: unbounded LP over a polytope");
      return G * res.point;
    }
  }
  return std::nullopt;
}

// Largest k <= kmax admitting an order witness (0 when none exists).
inline int max_witnessed_order(const RatMatrix& N, const RatMatrix& G, int kmax, RatVector* witness = nullptr) {
  int best = 0;
  for (int k = 1; k <= kmax; ++k)
    if (auto x = order_witness(N, G, k)) {
      best = k;
      if (witness) *witness = *x;
    }
  return best;
}

} // namespace conefaces::ratmath
