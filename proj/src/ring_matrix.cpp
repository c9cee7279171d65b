#include "hse/ring_matrix.hpp"

#include <bit>
#include <functional>
#include <map>
#include <stdexcept>

#include "hse/parallel.hpp"

namespace hse {

bool RingMatrix::is_zero() const {
  for (const auto& p : data)
    if (!p.is_zero()) return false;
  return true;
}

RingMatrix ring_matrix(const Ring& r, const QMatrix& m) {
  RingMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < out.rows; ++i)
    for (int j = 0; j < out.cols; ++j) out.at(i, j) = r.constant(m(i, j));
  return out;
}

RingMatrix multiply(const Ring& r, const RingMatrix& a, const RingMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix size mismatch");
  RingMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        if (!b.at(k, j).is_zero()) out.at(i, j) = r.add(out.at(i, j), r.mul(a.at(i, k), b.at(k, j)));
    }
  return out;
}

RingMatrix block_diagonal(const RingMatrix& a, const RingMatrix& b) {
  RingMatrix out(a.rows + b.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) out.at(a.rows + i, a.cols + j) = b.at(i, j);
  return out;
}

RingMatrix map_entries(const Ring& from, const RingMatrix& m, const Ring& to) {
  RingMatrix out(m.rows, m.cols);
  for (std::size_t k = 0; k < m.data.size(); ++k) out.data[k] = from.map_to(m.data[k], to);
  return out;
}

QMatrix evaluate(const Ring& r, const RingMatrix& m, std::span<const Rational> point) {
  QMatrix out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = r.eval(m.at(i, j), point);
  return out;
}

RingMatrix homogeneous_part(const RingMatrix& m, int d) {
  RingMatrix out(m.rows, m.cols);
  for (std::size_t k = 0; k < m.data.size(); ++k) out.data[k] = homogeneous_part(m.data[k], d);
  return out;
}

namespace {

class MinorMemo {
 public:
  MinorMemo(const Ring& r, const RingMatrix& m) : r_(r), m_(m) {}

  const Poly& get(std::uint64_t rows, std::uint64_t cols) {
    auto key = std::make_pair(rows, cols);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Poly v;
    if (rows == 0) {
      v = r_.one();
    } else {
      const int r0 = std::countr_zero(rows);
      const std::uint64_t rest = rows & (rows - 1);
      int pos = 0;
      for (std::uint64_t c = cols; c; c &= c - 1, ++pos) {
        const int j = std::countr_zero(c);
        const Poly& e = m_.at(r0, j);
        if (e.is_zero()) continue;
        const Poly& sub = get(rest, cols & ~(std::uint64_t{1} << j));
        if (sub.is_zero()) continue;
        Poly t = r_.mul(e, sub);
        v = pos % 2 == 0 ? r_.add(v, t) : r_.sub(v, t);
      }
    }
    return memo_.emplace(key, std::move(v)).first->second;
  }

 private:
  const Ring& r_;
  const RingMatrix& m_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Poly> memo_;
};

std::vector<std::uint64_t> subsets(int n, int k) {
  std::vector<std::uint64_t> out;
  std::function<void(int, int, std::uint64_t)> rec = [&](int start, int left, std::uint64_t mask) {
    if (left == 0) {
      out.push_back(mask);
      return;
    }
    for (int i = start; i <= n - left; ++i) rec(i + 1, left - 1, mask | (std::uint64_t{1} << i));
  };
  rec(0, k, 0);
  return out;
}

std::uint64_t to_mask(const std::vector<int>& idx) {
  std::uint64_t m = 0;
  for (int i : idx) {
    if (i < 0 || i >= 64) throw std::invalid_argument("minor index out of range");
    if (m & (std::uint64_t{1} << i)) throw std::invalid_argument("repeated minor index");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

}  // namespace

std::string mask_text(std::uint64_t mask) {
  std::string s = "{";
  bool first = true;
  for (std::uint64_t c = mask; c; c &= c - 1) {
    s += (first ? "" : ",") + std::to_string(std::countr_zero(c));
    first = false;
  }
  return s + "}";
}

Poly minor(const Ring& r, const RingMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() != cols.size()) throw std::invalid_argument("minor needs as many rows as columns");
  for (int i : rows)
    if (i >= m.rows) throw std::invalid_argument("minor row out of range");
  for (int j : cols)
    if (j >= m.cols) throw std::invalid_argument("minor column out of range");
  // Laplace over masks follows increasing index order, so sort with a sign.
  auto sorted_sign = [](std::vector<int> v) {
    int s = 1;
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b)
        if (v[a] > v[b]) s = -s;
    return s;
  };
  MinorMemo memo(r, m);
  const Poly& v = memo.get(to_mask(rows), to_mask(cols));
  return sorted_sign(rows) * sorted_sign(cols) > 0 ? v : r.neg(v);
}

std::vector<MinorEntry> all_minors(const Ring& r, const RingMatrix& m, int size) {
  if (m.rows > 64 || m.cols > 64) throw std::invalid_argument("matrices above 64 rows or columns are not supported");
  if (size <= 0 || size > std::min(m.rows, m.cols)) return {};
  const auto rs = subsets(m.rows, size);
  const auto cs = subsets(m.cols, size);
  std::vector<std::vector<MinorEntry>> parts(rs.size());
  parallel_for(rs.size(), [&](std::size_t k) {
    MinorMemo memo(r, m);
    for (auto c : cs) parts[k].push_back({rs[k], c, memo.get(rs[k], c)});
  });
  std::vector<MinorEntry> out;
  for (auto& p : parts)
    for (auto& e : p) out.push_back(std::move(e));
  return out;
}

Ideal minors(const Ring& r, const RingMatrix& m, int size, const std::string& tag) {
  if (size <= 0) return unit_ideal(r, tag + "[0]");
  if (size > std::min(m.rows, m.cols)) return zero_ideal();
  std::vector<Poly> g;
  std::vector<std::string> p;
  for (auto& e : all_minors(r, m, size)) {
    if (e.value.is_zero()) continue;
    g.push_back(std::move(e.value));
    p.push_back(tag + " rows" + mask_text(e.rows) + " cols" + mask_text(e.cols));
  }
  return make_ideal(r, g, p);
}

Ideal block_diagonal_minors(const Ring& r, const RingMatrix& a, const RingMatrix& b, int size,
                            const std::string& tag_a, const std::string& tag_b) {
  if (size <= 0) return unit_ideal(r, "size " + std::to_string(size));
  Ideal out;
  for (int s = 0; s <= size; ++s) {
    const int t = size - s;
    if (s > std::min(a.rows, a.cols) || t > std::min(b.rows, b.cols)) continue;
    Ideal ia = s == 0 ? unit_ideal(r, tag_a + "[0]") : minors(r, a, s, tag_a);
    Ideal ib = t == 0 ? unit_ideal(r, tag_b + "[0]") : minors(r, b, t, tag_b);
    out = ideal_sum(r, out, ideal_product(r, ia, ib));
  }
  return out;
}

}  // namespace hse
