#include "hse/linalg.hpp"

#include <stdexcept>

namespace hse {

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  QMatrix aug(n, 2 * n);
  aug << m, QMatrix::Identity(n, n);
  auto e = rref(aug);
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || (n > 0 && e.pivots[static_cast<std::size_t>(n - 1)] >= n))
    throw std::invalid_argument("matrix is singular");
  return e.reduced.rightCols(n);
}

bool in_column_span(const QMatrix& basis, const QVector& v) {
  if (basis.cols() == 0) return is_zero_matrix(v);
  return solve(basis, v).has_value();
}

}  // namespace hse
