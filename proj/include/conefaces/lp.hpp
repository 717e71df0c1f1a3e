#pragma once

#include "conefaces/matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace conefaces::ratmath {

enum class LpSense { maximize, minimize };
enum class LpStatus { optimal, unbounded, infeasible };

// Equality-form linear program:  A x = b,  x_j >= lower_j where a lower bound
// is given (free otherwise), optimize objective . x.
struct LpProblem {
  RatMatrix constraints;
  RatVector rhs;
  std::vector<std::optional<Rational>> lower;
  RatVector objective;
  LpSense sense = LpSense::maximize;

  std::size_t variables() const { return constraints.cols(); }

  // Convenience: all variables bounded below by zero.
  static LpProblem nonnegative(RatMatrix A, RatVector b, RatVector c, LpSense sense) {
    std::vector<std::optional<Rational>> lb(A.cols(), Rational(0));
    return {std::move(A), std::move(b), std::move(lb), std::move(c), sense};
  }
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational optimum;
  RatVector point;
};

namespace detail {

// Dense simplex tableau on  M y = r, y >= 0, r >= 0, maximize cost . y.
// Bland's rule throughout (smallest index enters, smallest basic index
// leaves among ratio ties).
class Tableau {
public:
  Tableau(RatMatrix M, RatVector r) : M_(std::move(M)), r_(std::move(r)) {}

  // Phase 1 + phase 2. `y` receives the basic solution.
  LpStatus solve(const RatVector& cost, RatVector& y, Rational& value) {
    const std::size_t m = M_.rows(), n = M_.cols();
    // Columns: n structural then m artificial.
    T_ = RatMatrix(m, n + m);
    rhs_ = r_;
    basis_.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) T_(i, j) = M_(i, j);
      T_(i, n + i) = 1;
      basis_[i] = n + i;
    }
    // Phase 1: maximize -sum(artificials).
    RatVector phase1(n + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
    if (run(phase1, n + m) != LpStatus::optimal) throw InternalError("phase 1 unbounded");
    Rational infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (basis_[i] >= n) infeas += rhs_[i];
    if (sgn(infeas) != 0) return LpStatus::infeasible;

    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < basis_.size();) {
      if (basis_[i] < n) {
        ++i;
        continue;
      }
      std::size_t enter = n;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(T_(i, j)) != 0) {
          enter = j;
          break;
        }
      if (enter == n) {
        remove_row(i);
        continue;
      }
      pivot(i, enter);
      ++i;
    }

    RatVector phase2(n + m, Rational(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = cost[j];
    LpStatus st = run(phase2, n);
    if (st != LpStatus::optimal) return st;
    y.assign(n, Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < n) y[basis_[i]] = rhs_[i];
    value = dot(cost, y);
    return LpStatus::optimal;
  }

private:
  // Runs simplex with columns [0, allowed) eligible to enter.
  LpStatus run(const RatVector& cost, std::size_t allowed) {
    for (;;) {
      // reduced cost d_j = c_j - c_B B^{-1} a_j (tableau is kept in canonical form)
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (is_basic(j)) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < basis_.size(); ++i)
          if (sgn(T_(i, j)) != 0) d -= cost[basis_[i]] * T_(i, j);
        if (sgn(d) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return LpStatus::optimal;
      std::size_t leave = basis_.size();
      Rational best;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (sgn(T_(i, enter)) <= 0) continue;
        Rational ratio = rhs_[i] / T_(i, enter);
        if (leave == basis_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == basis_.size()) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  void pivot(std::size_t row, std::size_t col) {
    const std::size_t cols = T_.cols();
    Rational inv = 1 / T_(row, col);
    for (std::size_t j = 0; j < cols; ++j) T_(row, j) *= inv;
    rhs_[row] *= inv;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (i == row || sgn(T_(i, col)) == 0) continue;
      Rational f = T_(i, col);
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(T_(row, j)) != 0) T_(i, j) -= f * T_(row, j);
      rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  void remove_row(std::size_t row) {
    RatMatrix T(basis_.size() - 1, T_.cols());
    RatVector rhs;
    std::vector<std::size_t> basis;
    for (std::size_t i = 0, k = 0; i < basis_.size(); ++i) {
      if (i == row) continue;
      for (std::size_t j = 0; j < T_.cols(); ++j) T(k, j) = T_(i, j);
      rhs.push_back(rhs_[i]);
      basis.push_back(basis_[i]);
      ++k;
    }
    T_ = std::move(T);
    rhs_ = std::move(rhs);
    basis_ = std::move(basis);
  }

  RatMatrix M_;
  RatVector r_;
  RatMatrix T_;
  RatVector rhs_;
  std::vector<std::size_t> basis_;
};

} // namespace detail

// Exact two-phase simplex.
inline LpResult lp_solve(const LpProblem& prob) {
  const std::size_t m = prob.constraints.rows(), n = prob.variables();
  if (prob.rhs.size() != m || prob.lower.size() != n || prob.objective.size() != n)
    throw InputError("lp_solve: inconsistent problem dimensions");

  // x_j = l_j + y_j (bounded) or y_j+ - y_j- (free).
  std::vector<std::size_t> pos(n), neg(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos[j] = cols++;
    if (!prob.lower[j]) neg[j] = cols++;
  }
  RatMatrix M(m, cols);
  RatVector r = prob.rhs;
  RatVector cost(cols, Rational(0));
  const int s = prob.sense == LpSense::maximize ? 1 : -1;
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos[j]] = s * prob.objective[j];
    if (neg[j] != SIZE_MAX) cost[neg[j]] = -s * prob.objective[j];
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& a = prob.constraints(i, j);
      if (sgn(a) == 0) continue;
      M(i, pos[j]) = a;
      if (neg[j] != SIZE_MAX) M(i, neg[j]) = -a;
      else r[i] -= a * *prob.lower[j];
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(r[i]) < 0) {
      r[i] = -r[i];
      for (std::size_t j = 0; j < cols; ++j) M(i, j) = -M(i, j);
    }

  detail::Tableau tab(std::move(M), std::move(r));
  RatVector y;
  Rational value;
  LpResult out;
  out.status = tab.solve(cost, y, value);
  if (out.status != LpStatus::optimal) return out;
  out.point.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    out.point[j] = y[pos[j]];
    if (neg[j] != SIZE_MAX) out.point[j] -= y[neg[j]];
    else out.point[j] += *prob.lower[j];
  }
  out.optimum = dot(prob.objective, out.point);
  return out;
}

// Feasibility of {A x = b, x >= 0}; returns a point when feasible.
inline std::optional<RatVector> lp_feasible_point(const RatMatrix& A, const RatVector& b) {
  auto res = lp_solve(LpProblem::nonnegative(A, b, RatVector(A.cols(), Rational(0)), LpSense::maximize));
  if (res.status == LpStatus::infeasible) return std::nullopt;
  return res.point;
}

} // namespace conefaces::ratmath
