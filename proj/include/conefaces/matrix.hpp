#pragma once

#include "conefaces/rational.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace conefaces::ratmath {

// Dense row-major matrix of exact rationals.
class RatMatrix {
public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InputError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMatrix from_rows(const std::vector<RatVector>& rows) {
    RatMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  // Columns given as vectors of a common length.
  static RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t n) {
    RatMatrix m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const { return RatVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  RatVector col(std::size_t j) const {
    RatVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Principal-style submatrix P_{ST}.
  RatMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    RatMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) >= 0; });
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    RatMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
  }
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    RatMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
  }
  friend RatMatrix operator*(const Rational& c, const RatMatrix& a) {
    RatMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = c * a.data_[k];
    return r;
  }
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    assert(a.cols_ == b.rows_);
    RatMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend RatVector operator*(const RatMatrix& a, const RatVector& x) {
    assert(a.cols_ == x.size());
    RatVector y(a.rows_, Rational(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (sgn(a(i, j)) != 0) y[i] += a(i, j) * x[j];
    return y;
  }

  // A - cI
  RatMatrix shifted(const Rational& c) const {
    RatMatrix r = *this;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) r(i, i) -= c;
    return r;
  }

  RatMatrix pow(unsigned k) const {
    assert(square());
    RatMatrix result = identity(rows_), base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<RatVector> kernel_basis;
};

namespace detail {

// Gauss-Jordan with full pivoting. On return the leading rank x rank block of
// `m` (in permuted column order `perm`) is the identity.
inline std::size_t full_pivot_reduce(RatMatrix& m, std::vector<std::size_t>& perm) {
  const std::size_t rows = m.rows(), cols = m.cols();
  perm.resize(cols);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    std::size_t best_i = rows, best_j = cols, best_size = 0;
    for (std::size_t i = r; i < rows; ++i)
      for (std::size_t j = r; j < cols; ++j) {
        const Rational& v = m(i, perm[j]);
        if (sgn(v) == 0) continue;
        std::size_t sz = bit_size(v);
        if (best_i == rows || sz < best_size) {
          best_i = i;
          best_j = j;
          best_size = sz;
        }
      }
    if (best_i == rows) break;
    if (best_i != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best_i, j));
    std::swap(perm[r], perm[best_j]);
    const std::size_t pc = perm[r];
    Rational inv = 1 / m(r, pc);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, pc)) == 0) continue;
      Rational f = m(i, pc);
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
    }
  }
  return r;
}

} // namespace detail

inline RankKernel rank_and_kernel(const RatMatrix& M) {
  RatMatrix m = M;
  std::vector<std::size_t> perm;
  const std::size_t r = detail::full_pivot_reduce(m, perm);
  RankKernel out;
  out.rank = r;
  for (std::size_t f = r; f < M.cols(); ++f) {
    RatVector v(M.cols(), Rational(0));
    v[perm[f]] = 1;
    for (std::size_t i = 0; i < r; ++i) v[perm[i]] = -m(i, perm[f]);
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

inline std::size_t rank(const RatMatrix& M) {
  RatMatrix m = M;
  std::vector<std::size_t> perm;
  return detail::full_pivot_reduce(m, perm);
}

inline std::size_t rank_of_vectors(const std::vector<RatVector>& vs) {
  if (vs.empty()) return 0;
  return rank(RatMatrix::from_rows(vs));
}

// Solves M c = b; empty optional when inconsistent. Free variables are zero.
inline std::optional<RatVector> solve(const RatMatrix& M, const RatVector& b) {
  RatMatrix aug(M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) aug(i, j) = M(i, j);
    aug(i, M.cols()) = b[i];
  }
  // Partial reduction that never pivots in the augmented column.
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t j = 0; j < M.cols() && r < M.rows(); ++j) {
    std::size_t p = M.rows();
    for (std::size_t i = r; i < M.rows(); ++i)
      if (sgn(aug(i, j)) != 0 && (p == M.rows() || bit_size(aug(i, j)) < bit_size(aug(p, j)))) p = i;
    if (p == M.rows()) continue;
    if (p != r)
      for (std::size_t k = 0; k <= M.cols(); ++k) std::swap(aug(r, k), aug(p, k));
    Rational inv = 1 / aug(r, j);
    for (std::size_t k = 0; k <= M.cols(); ++k) aug(r, k) *= inv;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || sgn(aug(i, j)) == 0) continue;
      Rational f = aug(i, j);
      for (std::size_t k = 0; k <= M.cols(); ++k) aug(i, k) -= f * aug(r, k);
    }
    pivot_cols.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < M.rows(); ++i)
    if (sgn(aug(i, M.cols())) != 0) return std::nullopt;
  RatVector c(M.cols(), Rational(0));
  for (std::size_t i = 0; i < r; ++i) c[pivot_cols[i]] = aug(i, M.cols());
  return c;
}

inline bool in_span(const std::vector<RatVector>& basis, const RatVector& v) {
  if (basis.empty()) return is_zero(v);
  return solve(RatMatrix::from_columns(basis, v.size()), v).has_value();
}

// Inverse of a nonsingular square matrix; throws when singular.
inline RatMatrix inverse(const RatMatrix& M) {
  const std::size_t n = M.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
    aug(i, n + i) = 1;
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t p = n;
    for (std::size_t i = j; i < n; ++i)
      if (sgn(aug(i, j)) != 0) {
        p = i;
        break;
      }
    if (p == n) throw InputError("matrix is singular");
    if (p != j)
      for (std::size_t k = 0; k < 2 * n; ++k) std::swap(aug(j, k), aug(p, k));
    Rational inv = 1 / aug(j, j);
    for (std::size_t k = 0; k < 2 * n; ++k) aug(j, k) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || sgn(aug(i, j)) == 0) continue;
      Rational f = aug(i, j);
      for (std::size_t k = 0; k < 2 * n; ++k) aug(i, k) -= f * aug(j, k);
    }
  }
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

} // namespace conefaces::ratmath
