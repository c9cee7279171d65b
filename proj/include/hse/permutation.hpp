#pragma once

#include <span>
#include <vector>

namespace hse {

/// Permutation of {0..n-1} stored as its image array. Acting on a sequence,
/// act(a)[i] = a[p(i)].
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless image is a bijection of {0..n-1}.
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const { return image_; }

  /// (p * q)(i) = p(q(i)); acting by p*q means acting by p, then by q.
  Permutation operator*(const Permutation& q) const;
  Permutation inverse() const;
  int sign() const;

  template <class T>
  std::vector<T> act(std::span<const T> a) const {
    std::vector<T> out;
    out.reserve(image_.size());
    for (int j : image_) out.push_back(a[static_cast<std::size_t>(j)]);
    return out;
  }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> image_;
};

/// Sign of reordering (a_p(0), ..., a_p(n-1)) back to (a_0, ..., a_{n-1}),
/// (-1)^{|x||y|} per transposed pair. degrees[i] = |a_i|.
int koszul_sign(const Permutation& p, std::span<const int> degrees);

/// sgn(p) * koszul_sign(p): the sign of graded antisymmetry.
int antisym_sign(const Permutation& p, std::span<const int> degrees);

/// Graded antisymmetry sign of the sequence relative to its stable sort;
/// 0 when a repeated entry of even degree forces the value to vanish.
/// The sequence holds basis indices, deg maps an index to its degree.
int sort_sign(std::span<const int> seq, std::span<const int> deg);

/// (i, n-i) unshuffles: p(0)<...<p(i-1) and p(i)<...<p(n-1).
std::vector<Permutation> unshuffles(int i, int n);

/// Permutations preserving the order inside consecutive blocks of the given
/// sizes (the images of each block increase).
std::vector<Permutation> block_permutations(std::span<const int> block_sizes);

/// Block profile exponent sum_{s=1}^{j-1} (j - s)(k_s - 1).
int block_epsilon(std::span<const int> block_sizes);

/// Compositions of n into k positive parts.
std::vector<std::vector<int>> compositions(int n, int k);
/// Compositions of n into at least min_parts positive parts.
std::vector<std::vector<int>> compositions_min_parts(int n, int min_parts);

/// theta(r) = sum_{i<j} r_i (r_j + 1), reduced mod 2.
int theta(std::span<const int> r);

/// Set partitions of {0..n-1}; blocks in order of minimum element, elements
/// increasing inside each block.
std::vector<std::vector<std::vector<int>>> set_partitions(int n);

}  // namespace hse
