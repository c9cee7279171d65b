#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hse/graded_space.hpp"

namespace hse {

using Tuple = std::vector<int>;

enum class Symmetry {
  none,
  antisymmetric,  ///< graded antisymmetric in all slots
  algebra_slots,  ///< graded antisymmetric in all but the last slot
};

std::string to_string(Symmetry s);
Symmetry parse_symmetry(const std::string& s);

/// Sparse structure constants of a multilinear map V_1 x ... x V_n -> W of
/// degree `shift`. Symmetric maps store only entries on canonical (sorted)
/// tuples; other orderings are reconstructed with the graded antisymmetry
/// sign, using the degrees of the space filling the permutable slots.
class MultiMap {
 public:
  MultiMap() = default;
  MultiMap(int arity, int shift, Symmetry sym = Symmetry::none, std::vector<int> slot_degrees = {});

  int arity() const { return arity_; }
  int shift() const { return shift_; }
  Symmetry symmetry() const { return sym_; }
  const std::vector<int>& slot_degrees() const { return slot_degrees_; }

  /// Adds c * e_out to the value on `in` (any ordering).
  void add(const Tuple& in, int out, const Rational& c);
  void add(const Tuple& in, const SparseVec& v);

  /// Value on an arbitrary input tuple.
  SparseVec operator()(const Tuple& in) const;
  /// Returns 0 if `in` is forced to vanish, else the sign s with
  /// value(in) = s * value(canonical), and writes the canonical tuple.
  int canonicalize(const Tuple& in, Tuple& canonical) const;

  const std::map<Tuple, SparseVec>& entries() const { return table_; }
  bool empty() const { return table_.empty(); }
  std::size_t size() const { return table_.size(); }

  bool operator==(const MultiMap& o) const {
    return arity_ == o.arity_ && shift_ == o.shift_ && sym_ == o.sym_ && table_ == o.table_;
  }

 private:
  int arity_ = 0;
  int shift_ = 0;
  Symmetry sym_ = Symmetry::none;
  std::vector<int> slot_degrees_;
  std::map<Tuple, SparseVec> table_;
};

/// Evaluates m on sparse vector arguments, expanding multilinearly.
SparseVec eval_map(const MultiMap& m, std::span<const SparseVec> args);

/// Koszul sign for (F_1 x ... x F_k) applied to inputs whose degree sums
/// per block are given: prod_s (-1)^{|F_s| * (sum of earlier inputs)}.
int tensor_koszul_sign(std::span<const int> map_degrees, std::span<const int> block_input_degrees);

/// Structure constants of outer o_slot inner (0-based slot), evaluated on
/// every tuple of `space`, with the Koszul sign of inner's shift crossing the
/// arguments before it. The result has arity outer+inner-1 and no symmetry.
MultiMap compose_multimaps(const MultiMap& outer, const MultiMap& inner, int slot, const GradedSpace& space);

/// Every tuple in {0..dim-1}^n, lexicographic.
std::vector<Tuple> all_tuples(int dim, int n);
/// Non-decreasing tuples in {0..dim-1}^n.
std::vector<Tuple> sorted_tuples(int dim, int n);

int degree_sum(const Tuple& t, std::span<const int> deg);

}  // namespace hse
