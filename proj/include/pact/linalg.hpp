#pragma once

// Exact linear algebra over an ordered field scalar (pact::Rational in
// practice). Everything is dense: the matrices here are at most a few
// hundred rows.

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace pact {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// In-place reduced row echelon form; returns the pivot columns.
template <typename Scalar>
std::vector<int> rref(Matrix<Scalar>& m) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != Scalar(0)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(row));
    const Scalar lead = m(row, col);
    m.row(row) /= lead;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == Scalar(0)) continue;
      const Scalar f = m(r, col);
      m.row(r) -= f * m.row(row);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

template <typename Scalar>
int exact_rank(Matrix<Scalar> m) {
  return static_cast<int>(rref(m).size());
}

/// Basis of {x : m x = 0} as matrix columns.
template <typename Scalar>
Matrix<Scalar> exact_nullspace(Matrix<Scalar> m) {
  const auto pivots = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (int p : pivots) is_pivot[p] = 1;
  Matrix<Scalar> basis(m.cols(), m.cols() - static_cast<Eigen::Index>(pivots.size()));
  basis.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(r, free);
    ++k;
  }
  return basis;
}

/// Positive semidefiniteness of a symmetric matrix by exact LDL^T with
/// zero-pivot handling. Returns false for non-symmetric input.
template <typename Scalar>
bool is_psd_exact(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) return false;
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (m(i, j) != m(j, i)) return false;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar d = m(k, k);
    if (d < Scalar(0)) return false;
    if (d == Scalar(0)) {
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != Scalar(0)) return false;
      continue;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (m(i, k) == Scalar(0)) continue;
      const Scalar f = m(i, k) / d;
      for (Eigen::Index j = k + 1; j < n; ++j)
        if (m(k, j) != Scalar(0)) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

/// A point with A x = b and 0 <= x <= upper (entries of `upper` that are
/// negative mean "no upper bound"), or nullopt if none exists. Two-phase
/// free simplex on a dense tableau with Bland's rule, so it terminates and is
/// exact over Rational.
template <typename Scalar>
std::optional<Vector<Scalar>> find_feasible_point(const Matrix<Scalar>& A, const Vector<Scalar>& b,
                                                  const Vector<Scalar>& upper) {
  const Eigen::Index m0 = A.rows();
  const Eigen::Index n = A.cols();
  std::vector<Eigen::Index> bounded;
  for (Eigen::Index j = 0; j < n; ++j)
    if (upper(j) >= Scalar(0)) bounded.push_back(j);
  const Eigen::Index ms = static_cast<Eigen::Index>(bounded.size());
  const Eigen::Index rows = m0 + ms;
  // columns: x (n), bound slacks (ms), artificials (rows), rhs
  const Eigen::Index cols = n + ms + rows;
  Matrix<Scalar> t = Matrix<Scalar>::Zero(rows + 1, cols + 1);
  for (Eigen::Index i = 0; i < m0; ++i) {
    const bool flip = b(i) < Scalar(0);
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = flip ? Scalar(-A(i, j)) : A(i, j);
    t(i, cols) = flip ? Scalar(-b(i)) : b(i);
  }
  for (Eigen::Index k = 0; k < ms; ++k) {
    t(m0 + k, bounded[k]) = 1;
    t(m0 + k, n + k) = 1;
    t(m0 + k, cols) = upper(bounded[k]);
  }
  std::vector<Eigen::Index> basis(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    t(i, n + ms + i) = 1;
    basis[i] = n + ms + i;
  }
  // objective row: minimize sum of artificials, written as reduced costs
  for (Eigen::Index i = 0; i < rows; ++i) t.row(rows) -= t.row(i);
  for (Eigen::Index i = 0; i < rows; ++i) t(rows, n + ms + i) = 0;

  while (true) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (t(rows, j) < Scalar(0)) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    Scalar best_ratio;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (t(i, enter) <= Scalar(0)) continue;
      const Scalar ratio = t(i, cols) / t(i, enter);
      if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase I
    const Scalar p = t(leave, enter);
    t.row(leave) /= p;
    for (Eigen::Index i = 0; i <= rows; ++i) {
      if (i == leave || t(i, enter) == Scalar(0)) continue;
      const Scalar f = t(i, enter);
      t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
  }
  if (t(rows, cols) != Scalar(0)) return std::nullopt;  // -(sum of artificials)
  Vector<Scalar> x = Vector<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i < rows; ++i)
    if (basis[i] < n) x(basis[i]) = t(i, cols);
  return x;
}

}  // namespace pact
