#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "hse/rational.hpp"

namespace hse {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Mat<Rational>;
using QVector = Vec<Rational>;

inline QMatrix qzero(Eigen::Index rows, Eigen::Index cols) {
  QMatrix m(rows, cols);
  m.setZero();
  return m;
}

template <class Scalar>
struct Echelon {
  Mat<Scalar> reduced;
  std::vector<Eigen::Index> pivots;  ///< pivot column of each nonzero row
};

/// Exact reduced row-echelon form by Gauss-Jordan elimination.
template <class Derived>
Echelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> e{m, {}};
  auto& a = e.reduced;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row) a.row(p).swap(a.row(row));
    Scalar inv = Scalar(1) / a(row, col);
    for (Eigen::Index c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      Scalar f = a(r, col);
      for (Eigen::Index c = col; c < a.cols(); ++c)
        if (a(row, c) != 0) a(r, c) -= f * a(row, c);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

template <class Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Eigen::Index>(rref(m).pivots.size());
}

/// Columns form the standard nullspace basis: one vector per free column,
/// with a 1 in that column.
template <class Derived>
Mat<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  auto e = rref(m);
  const Eigen::Index n = m.cols();
  std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
  for (auto p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = 1;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  Mat<Scalar> k(n, static_cast<Eigen::Index>(free.size()));
  k.setZero();
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], static_cast<Eigen::Index>(j)) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      k(e.pivots[r], static_cast<Eigen::Index>(j)) = -e.reduced(static_cast<Eigen::Index>(r), free[j]);
  }
  return k;
}

/// Some solution x of a x = b, or nullopt when inconsistent.
template <class DA, class DB>
std::optional<Vec<typename DA::Scalar>> solve(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Mat<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  auto e = rref(aug);
  Vec<Scalar> x(a.cols());
  x.setZero();
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x(e.pivots[r]) = e.reduced(static_cast<Eigen::Index>(r), a.cols());
  }
  return x;
}

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) return false;
  return true;
}

/// Inverse of a square invertible matrix; throws std::invalid_argument otherwise.
QMatrix inverse(const QMatrix& m);

/// Whether v lies in the column span of basis.
bool in_column_span(const QMatrix& basis, const QVector& v);

}  // namespace hse
