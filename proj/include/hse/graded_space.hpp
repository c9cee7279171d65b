#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hse/rational.hpp"

namespace hse {

struct BasisElement {
  std::string label;
  int deg = 0;
  std::optional<int> weight;

  bool operator==(const BasisElement&) const = default;
};

/// Finite-dimensional Z-graded vector space with a labelled basis and an
/// optional weight grading (all basis elements weighted or none).
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<BasisElement> basis);

  int dim() const { return static_cast<int>(basis_.size()); }
  const BasisElement& operator[](int i) const { return basis_[static_cast<std::size_t>(i)]; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(int i) const { return basis_[static_cast<std::size_t>(i)].deg; }
  std::optional<int> weight(int i) const { return basis_[static_cast<std::size_t>(i)].weight; }
  bool weighted() const { return weighted_; }
  const std::vector<int>& degrees() const { return degrees_; }

  std::optional<int> find(std::string_view label) const;
  /// Throws std::invalid_argument for an unknown label.
  int index(std::string_view label) const;

  std::vector<int> in_degree(int d) const;
  int dim_in_degree(int d) const;
  bool has_degree(int d) const { return dim_in_degree(d) > 0; }
  int min_degree() const;
  int max_degree() const;

  /// Basis of a followed by basis of b, labels prefixed.
  static GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b, std::string_view prefix_a,
                                std::string_view prefix_b);

  bool operator==(const GradedSpace& o) const { return basis_ == o.basis_; }

 private:
  std::vector<BasisElement> basis_;
  std::vector<int> degrees_;
  std::unordered_map<std::string, int> by_label_;
  std::map<int, std::vector<int>> by_degree_;
  bool weighted_ = false;
};

/// Sparse vector: basis index -> nonzero coefficient.
using SparseVec = std::map<int, Rational>;

void add_term(SparseVec& v, int index, const Rational& c);
void axpy(SparseVec& acc, const Rational& c, const SparseVec& v);
SparseVec scaled(const SparseVec& v, const Rational& c);
bool is_zero(const SparseVec& v);
SparseVec unit_vector(int index);

}  // namespace hse
