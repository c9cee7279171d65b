#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hse/transfer.hpp"

namespace hse {

void validate(const TransferDiagram& t) {
  const auto nb = t.big.dim(), ns = t.small.dim();
  if (t.big_d.rows() != nb || t.big_d.cols() != nb || t.small_d.rows() != ns || t.small_d.cols() != ns ||
      t.f.rows() != ns || t.f.cols() != nb || t.g.rows() != nb || t.g.cols() != ns || t.h.rows() != nb ||
      t.h.cols() != nb)
    throw std::invalid_argument("transfer diagram: matrix sizes do not match the spaces");
  if (!is_zero_matrix(QMatrix(t.f * t.big_d - t.small_d * t.f)))
    throw std::invalid_argument("transfer diagram: f is not a chain map");
  if (!is_zero_matrix(QMatrix(t.big_d * t.g - t.g * t.small_d)))
    throw std::invalid_argument("transfer diagram: g is not a chain map");
  QMatrix lhs = QMatrix::Identity(nb, nb) - t.g * t.f;
  if (lhs != QMatrix(t.big_d * t.h + t.h * t.big_d))
    throw std::invalid_argument("transfer diagram: 1 - gf != dh + hd");
  for (int j = 0; j < nb; ++j)
    for (int i = 0; i < nb; ++i)
      if (t.h(i, j) != 0 && t.big.degree(i) != t.big.degree(j) - 1)
        throw std::invalid_argument("transfer diagram: h is not of degree -1");
}

TransferDiagram cohomology_splitting(const GradedSpace& space, const QMatrix& d, const SplittingOptions& opt) {
  const int n = space.dim();
  if (d.rows() != n || d.cols() != n) throw std::invalid_argument("differential has the wrong size");
  if (!is_zero_matrix(QMatrix(d * d))) throw std::invalid_argument("differential does not square to zero");
  const bool weights = opt.use_weights && space.weighted();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (d(i, j) == 0) continue;
      if (space.degree(i) != space.degree(j) + 1) throw std::invalid_argument("differential is not of degree +1");
      if (weights && space.weight(i) != space.weight(j))
        throw std::invalid_argument("differential is not weight-preserving");
    }
  std::vector<int> order = opt.order;
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      auto key = [&](int i) {
        return std::make_tuple(space.degree(i), weights ? space.weight(i).value_or(0) : 0, space[i].label);
      };
      return key(a) < key(b);
    });
  } else {
    std::vector<int> check = order;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n; ++i)
      if (check.size() != static_cast<std::size_t>(n) || check[static_cast<std::size_t>(i)] != i)
        throw std::invalid_argument("splitting order is not a permutation of the basis");
  }
  using Key = std::pair<int, int>;  // (degree, weight)
  std::map<Key, std::vector<int>> blocks;
  for (int i : order) blocks[{space.degree(i), weights ? space.weight(i).value_or(0) : 0}].push_back(i);
  auto block = [&](int deg, int w) -> const std::vector<int>& {
    static const std::vector<int> empty;
    auto it = blocks.find({deg, w});
    return it == blocks.end() ? empty : it->second;
  };
  auto sub = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    QMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = d(rows[r], cols[c]);
    return m;
  };
  // K basis per block: pivot columns of d restricted to the block.
  std::map<Key, std::vector<int>> kbasis;
  for (const auto& [key, idx] : blocks) {
    auto e = rref(sub(block(key.first + 1, key.second), idx));
    for (auto p : e.pivots) kbasis[key].push_back(idx[static_cast<std::size_t>(p)]);
  }
  struct SmallEl {
    int deg, w, pivot;
    QVector rep;  // in big coordinates
  };
  std::vector<SmallEl> small_els;
  TransferDiagram t;
  t.big = space;
  t.big_d = d;
  t.h = qzero(n, n);
  QMatrix fbig = qzero(0, n);  // rows appended per small element
  std::vector<std::pair<int, QVector>> frows;
  for (const auto& [key, idx] : blocks) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    auto local = [&](int big_index) {
      return static_cast<Eigen::Index>(std::find(idx.begin(), idx.end(), big_index) - idx.begin());
    };
    QMatrix z = nullspace(sub(block(key.first + 1, key.second), idx));
    std::vector<int> free_cols;
    {
      auto e = rref(sub(block(key.first + 1, key.second), idx));
      std::vector<char> piv(static_cast<std::size_t>(k), 0);
      for (auto p : e.pivots) piv[static_cast<std::size_t>(p)] = 1;
      for (Eigen::Index c = 0; c < k; ++c)
        if (!piv[static_cast<std::size_t>(c)]) free_cols.push_back(idx[static_cast<std::size_t>(c)]);
    }
    // B basis: images of the K basis one degree down.
    const auto& kprev = kbasis[{key.first - 1, key.second}];
    QMatrix b(k, static_cast<Eigen::Index>(kprev.size()));
    for (std::size_t j = 0; j < kprev.size(); ++j)
      for (Eigen::Index r = 0; r < k; ++r) b(r, static_cast<Eigen::Index>(j)) = d(idx[static_cast<std::size_t>(r)], kprev[j]);
    QMatrix bz(k, b.cols() + z.cols());
    bz << b, z;
    auto e = rref(bz);
    std::vector<Eigen::Index> hcols;
    for (auto p : e.pivots)
      if (p >= b.cols()) hcols.push_back(p - b.cols());
    const auto& kb = kbasis[key];
    QMatrix basis(k, static_cast<Eigen::Index>(hcols.size()) + b.cols() + static_cast<Eigen::Index>(kb.size()));
    Eigen::Index col = 0;
    for (auto c : hcols) basis.col(col++) = z.col(c);
    for (Eigen::Index c = 0; c < b.cols(); ++c) basis.col(col++) = b.col(c);
    for (int kk : kb) {
      QVector u = QVector::Zero(k);
      u(local(kk)) = 1;
      basis.col(col++) = u;
    }
    if (col != k) throw std::logic_error("splitting does not span the block");
    QMatrix inv = inverse(basis);
    for (std::size_t s = 0; s < hcols.size(); ++s) {
      QVector rep = QVector::Zero(n);
      for (Eigen::Index r = 0; r < k; ++r) rep(idx[static_cast<std::size_t>(r)]) = z(r, hcols[s]);
      small_els.push_back({key.first, key.second, free_cols[static_cast<std::size_t>(hcols[s])], rep});
      QVector frow = QVector::Zero(n);
      for (Eigen::Index c = 0; c < k; ++c) frow(idx[static_cast<std::size_t>(c)]) = inv(static_cast<Eigen::Index>(s), c);
      frows.emplace_back(static_cast<int>(small_els.size()) - 1, frow);
    }
    for (std::size_t j = 0; j < kprev.size(); ++j) {
      Eigen::Index row = static_cast<Eigen::Index>(hcols.size() + j);
      for (Eigen::Index c = 0; c < k; ++c) t.h(kprev[j], idx[static_cast<std::size_t>(c)]) = inv(row, c);
    }
  }
  std::vector<BasisElement> sb;
  for (const auto& s : small_els)
    sb.push_back({"[" + space[s.pivot].label + "]", s.deg, space.weighted() ? space.weight(s.pivot) : std::nullopt});
  t.small = GradedSpace(sb);
  const auto ns = static_cast<Eigen::Index>(small_els.size());
  t.small_d = qzero(ns, ns);
  t.f = qzero(ns, n);
  t.g = qzero(n, ns);
  for (Eigen::Index s = 0; s < ns; ++s) {
    t.g.col(s) = small_els[static_cast<std::size_t>(s)].rep;
    t.pivots.push_back(small_els[static_cast<std::size_t>(s)].pivot);
  }
  for (const auto& [s, row] : frows) t.f.row(s) = row.transpose();
  validate(t);
  return t;
}

TransferDiagram direct_sum(const TransferDiagram& a, const TransferDiagram& b, const std::string& pa,
                           const std::string& pb) {
  TransferDiagram t;
  t.big = GradedSpace::direct_sum(a.big, b.big, pa, pb);
  t.small = GradedSpace::direct_sum(a.small, b.small, pa, pb);
  auto diag = [](const QMatrix& x, const QMatrix& y) {
    QMatrix m = qzero(x.rows() + y.rows(), x.cols() + y.cols());
    m.topLeftCorner(x.rows(), x.cols()) = x;
    m.bottomRightCorner(y.rows(), y.cols()) = y;
    return m;
  };
  t.big_d = diag(a.big_d, b.big_d);
  t.small_d = diag(a.small_d, b.small_d);
  t.f = diag(a.f, b.f);
  t.g = diag(a.g, b.g);
  t.h = diag(a.h, b.h);
  t.pivots = a.pivots;
  for (int p : b.pivots) t.pivots.push_back(p + a.big.dim());
  return t;
}

}  // namespace hse
