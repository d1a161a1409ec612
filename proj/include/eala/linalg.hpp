#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "eala/errors.hpp"
#include "eala/field.hpp"

namespace eala {

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

// Fraction-free (Bareiss) determinant.  Pivoting picks the first nonzero
// entry; there is no ordering on these fields, so no magnitude pivoting.
template <class K>
K exact_det(Mat<K> m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw Error("determinant of a non-square matrix");
  if (n == 0) return K(1);
  int sign = 1;
  K prev = K(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = k; r < n; ++r) {
      if (!is_zero(m(r, k))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return K(0);
    if (piv != k) {
      m.row(piv).swap(m.row(k));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = K(0);
    }
    prev = m(k, k);
  }
  K det = m(n - 1, n - 1);
  return (sign < 0) ? K(K(0) - det) : det;
}

// In-place reduced row echelon form; returns the pivot columns.
template <class K>
std::vector<Eigen::Index> rref(Mat<K>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (!is_zero(m(r, col))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    K inv = K(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      K f = m(r, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(r, j) = m(r, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
Eigen::Index exact_rank(Mat<K> m) {
  return static_cast<Eigen::Index>(rref(m).size());
}

// Basis of the right kernel {x : m x = 0}; empty exactly when m has full
// column rank (and, for square m, exactly when exact_det(m) != 0).
template <class K>
std::vector<Vec<K>> nullspace(Mat<K> m) {
  std::vector<Eigen::Index> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (Eigen::Index p : pivots) is_pivot[p] = true;
  std::vector<Vec<K>> basis;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<K> v = Vec<K>::Constant(m.cols(), K(0));
    v(free) = K(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v(pivots[i]) = K(K(0) - m(static_cast<Eigen::Index>(i), free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Exact inverse; throws SingularSystem with a kernel witness if singular.
template <class K>
Mat<K> exact_inverse(const Mat<K>& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw Error("inverse of a non-square matrix");
  Mat<K> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<K>::Identity(n, n);
  std::vector<Eigen::Index> pivots = rref(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < n ||
      (!pivots.empty() && pivots.back() >= n)) {
    auto ker = nullspace<K>(m);
    std::string witness = ker.empty() ? "" : " (kernel witness exists)";
    throw SingularSystem("singular system: rank " +
                         std::to_string(exact_rank<K>(m)) + " of " + std::to_string(n) +
                         witness);
  }
  return aug.rightCols(n);
}

// Unique solution of m x = rhs for invertible m.
template <class K>
Vec<K> solve(const Mat<K>& m, const Vec<K>& rhs) {
  Mat<K> inv = exact_inverse(m);
  return inv * rhs;
}

}  // namespace eala
