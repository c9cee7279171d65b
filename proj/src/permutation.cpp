#include "hse/permutation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hse {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (int v : image_) {
    if (v < 0 || v >= static_cast<int>(image_.size()) || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation image array");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::operator*(const Permutation& q) const {
  if (q.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> im(image_.size());
  for (int i = 0; i < size(); ++i) im[static_cast<std::size_t>(i)] = (*this)(q(i));
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(image_.size());
  for (int i = 0; i < size(); ++i) im[static_cast<std::size_t>((*this)(i))] = i;
  return Permutation(std::move(im));
}

int Permutation::sign() const {
  int s = 1;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (image_[static_cast<std::size_t>(i)] > image_[static_cast<std::size_t>(j)]) s = -s;
  return s;
}

int koszul_sign(const Permutation& p, std::span<const int> degrees) {
  if (static_cast<int>(degrees.size()) != p.size()) throw std::invalid_argument("degree list size mismatch");
  int s = 1;
  for (int i = 0; i < p.size(); ++i)
    for (int j = i + 1; j < p.size(); ++j)
      if (p(i) > p(j) && (degrees[static_cast<std::size_t>(p(i))] * degrees[static_cast<std::size_t>(p(j))]) % 2 != 0)
        s = -s;
  return s;
}

int antisym_sign(const Permutation& p, std::span<const int> degrees) { return p.sign() * koszul_sign(p, degrees); }

int sort_sign(std::span<const int> seq, std::span<const int> deg) {
  int s = 1;
  const std::size_t n = seq.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      int a = seq[i], b = seq[j];
      int da = deg[static_cast<std::size_t>(a)], db = deg[static_cast<std::size_t>(b)];
      if (a == b && da % 2 == 0) return 0;
      if (a > b && (da * db) % 2 == 0) s = -s;
    }
  return s;
}

std::vector<Permutation> unshuffles(int i, int n) {
  if (i < 0 || i > n) throw std::invalid_argument("unshuffle block out of range");
  std::vector<Permutation> out;
  std::vector<char> pick(static_cast<std::size_t>(n), 0);
  std::fill(pick.begin(), pick.begin() + i, 1);
  // prev_permutation over a sorted-descending mask enumerates lexicographically.
  do {
    std::vector<int> im;
    for (int t = 0; t < n; ++t)
      if (pick[static_cast<std::size_t>(t)]) im.push_back(t);
    for (int t = 0; t < n; ++t)
      if (!pick[static_cast<std::size_t>(t)]) im.push_back(t);
    out.emplace_back(std::move(im));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

std::vector<Permutation> block_permutations(std::span<const int> block_sizes) {
  int n = 0;
  for (int k : block_sizes) {
    if (k < 1) throw std::invalid_argument("block sizes must be positive");
    n += k;
  }
  std::vector<Permutation> out;
  std::vector<int> label(static_cast<std::size_t>(n));
  std::vector<int> im(static_cast<std::size_t>(n));
  // Assign each position of {0..n-1} to a block; sorted labels give increasing images.
  std::function<void(int, std::vector<int>&)> rec = [&](int pos, std::vector<int>& remaining) {
    if (pos == n) {
      std::vector<int> offset(block_sizes.size(), 0);
      for (std::size_t b = 1; b < block_sizes.size(); ++b) offset[b] = offset[b - 1] + block_sizes[b - 1];
      std::vector<int> fill = offset;
      for (int t = 0; t < n; ++t) {
        int b = label[static_cast<std::size_t>(t)];
        im[static_cast<std::size_t>(fill[static_cast<std::size_t>(b)]++)] = t;
      }
      out.emplace_back(im);
      return;
    }
    for (std::size_t b = 0; b < remaining.size(); ++b) {
      if (remaining[b] == 0) continue;
      --remaining[b];
      label[static_cast<std::size_t>(pos)] = static_cast<int>(b);
      rec(pos + 1, remaining);
      ++remaining[b];
    }
  };
  std::vector<int> remaining(block_sizes.begin(), block_sizes.end());
  rec(0, remaining);
  return out;
}

int block_epsilon(std::span<const int> block_sizes) {
  const int j = static_cast<int>(block_sizes.size());
  int e = 0;
  for (int s = 1; s <= j - 1; ++s) e += (j - s) * (block_sizes[static_cast<std::size_t>(s - 1)] - 1);
  return e;
}

std::vector<std::vector<int>> compositions(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k <= 0 || n < k) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int parts) {
    if (parts == 1) {
      cur.push_back(left);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int r = 1; r <= left - (parts - 1); ++r) {
      cur.push_back(r);
      rec(left - r, parts - 1);
      cur.pop_back();
    }
  };
  rec(n, k);
  return out;
}

std::vector<std::vector<int>> compositions_min_parts(int n, int min_parts) {
  std::vector<std::vector<int>> out;
  for (int k = std::max(1, min_parts); k <= n; ++k)
    for (auto& c : compositions(n, k)) out.push_back(std::move(c));
  return out;
}

int theta(std::span<const int> r) {
  long t = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) t += static_cast<long>(r[i]) * (r[j] + 1);
  return static_cast<int>(t % 2);
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int t) {
    if (t == n) {
      out.push_back(blocks);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(t);
      rec(t + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({t});
    rec(t + 1);
    blocks.pop_back();
  };
  if (n > 0) rec(0);
  return out;
}

}  // namespace hse
