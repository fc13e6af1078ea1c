#pragma once

// Exact Gaussian elimination over a field. Nothing here pivots on magnitude;
// the first nonzero entry in a column is taken, which is only meaningful for
// exact scalars.

#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace closurelab::linalg {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
bool is_zero_scalar(const Scalar& s) {
  return s == Scalar(0);
}

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
template <class Scalar>
std::vector<Eigen::Index> rref(DenseMatrix<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && is_zero_scalar(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c)
      if (!is_zero_scalar(m(row, c))) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero_scalar(m(r, col))) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c)
        if (!is_zero_scalar(m(row, c))) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Scalar>
Eigen::Index rank(DenseMatrix<Scalar> m) {
  return static_cast<Eigen::Index>(rref(m).size());
}

/// Rank of a list of equal-length vectors taken as rows.
template <class Scalar>
Eigen::Index rank_of_rows(const std::vector<DenseVector<Scalar>>& rows, Eigen::Index dim) {
  if (rows.empty()) return 0;
  DenseMatrix<Scalar> m(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return rank(std::move(m));
}

/// Basis of {y : m y = 0}.
template <class Scalar>
std::vector<DenseVector<Scalar>> nullspace(DenseMatrix<Scalar> m) {
  const Eigen::Index n = m.cols();
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<DenseVector<Scalar>> basis;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    DenseVector<Scalar> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Scalar(0);
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<Eigen::Index>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves a square nonsingular system exactly.
template <class Scalar>
DenseVector<Scalar> solve(const DenseMatrix<Scalar>& a, const DenseVector<Scalar>& b) {
  const Eigen::Index n = a.rows();
  DenseMatrix<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  const auto pivots = rref(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() != n - 1)
    throw std::domain_error("singular system");
  return aug.col(n);
}

/// Greedy maximal independent subset of rows, in order.
template <class Scalar>
std::vector<std::size_t> independent_rows(const std::vector<DenseVector<Scalar>>& rows, Eigen::Index dim) {
  std::vector<std::size_t> chosen;
  std::vector<DenseVector<Scalar>> basis;  // kept in echelon form
  std::vector<Eigen::Index> lead;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    DenseVector<Scalar> v = rows[i];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (is_zero_scalar(v[lead[b]])) continue;
      const Scalar f = v[lead[b]] / basis[b][lead[b]];
      v -= f * basis[b];
    }
    Eigen::Index l = 0;
    while (l < dim && is_zero_scalar(v[l])) ++l;
    if (l == dim) continue;
    basis.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(i);
    if (static_cast<Eigen::Index>(chosen.size()) == dim) break;
  }
  return chosen;
}

}  // namespace closurelab::linalg
