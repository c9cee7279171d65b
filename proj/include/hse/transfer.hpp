#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hse/structures.hpp"

namespace hse {

/// Homotopy transfer diagram between (big, big_d) and (small, small_d):
/// f big -> small, g small -> big chain maps, h of degree -1 on big with
/// 1 - g f = d h + h d. Matrices have rows indexed by the target basis.
struct TransferDiagram {
  GradedSpace big, small;
  QMatrix big_d, small_d;
  QMatrix f, g, h;
  std::vector<int> pivots;  ///< big-side free column behind each small basis element
};

/// Throws std::invalid_argument naming the first broken identity.
void validate(const TransferDiagram& t);

struct SplittingOptions {
  /// Priority order of big basis indices used for pivoting; empty means
  /// by (degree, weight, label).
  std::vector<int> order;
  bool use_weights = true;
};

/// Splitting A = H + B + K per degree (and per weight when weighted). Throws
/// if d^2 != 0 or d is not weight-preserving.
TransferDiagram cohomology_splitting(const GradedSpace& space, const QMatrix& d, const SplittingOptions& opt = {});

/// Block-diagonal diagram on big1 (+) big2 with labels prefixed.
TransferDiagram direct_sum(const TransferDiagram& a, const TransferDiagram& b, const std::string& pa,
                           const std::string& pb);

struct TransferOptions {
  int max_arity = 0;  ///< 0: default from the degree window
  /// Only evaluate small-side canonical tuples accepted by the filter.
  std::function<bool(const Tuple&)> filter;
  bool morphisms = false;  ///< also emit phi, psi and the homotopy components
};

/// Smallest n for which the shift 2 - n pushes every output out of the
/// degree window, or nullopt when no such n exists.
std::optional<int> window_arity_bound(const GradedSpace& small);
int default_max_arity(const GradedSpace& small);

struct AInfTransfer {
  AInfAlgebra minimal;
  InfMorphism phi;       ///< big -> small
  InfMorphism psi;       ///< small -> big
  MapFamily homotopy;    ///< H_n = h q_n on the big side
  int max_arity = 0;
};

/// Memoized p- and q-kernels of an A-infinity algebra along a diagram. The
/// recursions run on the suspension, where every term carries only Koszul
/// signs; public values are converted back to the unsuspended convention.
class KernelCache {
 public:
  KernelCache(const TransferDiagram& t, const AInfAlgebra& big);
  /// p_n on a big-side basis tuple, n >= 2.
  SparseVec p(const Tuple& x);
  /// q_n on a big-side basis tuple, n >= 1.
  SparseVec q(const Tuple& x);
  /// (psi phi)_m on a big-side basis tuple.
  SparseVec psiphi(const Tuple& x);
  SparseVec p_from_scratch(const Tuple& x) const;
  /// Sign (-1)^{sum_j (n-j)(|x_j|-1)} relating a map on x to its suspension.
  int suspension_sign(const Tuple& x) const;

  /// Suspended kernels.
  const SparseVec& sp(const Tuple& x);
  const SparseVec& sq(const Tuple& x);
  const SparseVec& spsiphi(const Tuple& x);

 private:
  SparseVec compute_p(const Tuple& x);
  SparseVec compute_q(const Tuple& x);
  SparseVec compute_psiphi(const Tuple& x);
  const SparseVec& hp(const Tuple& x);
  const SparseVec& hq(const Tuple& x);
  const SparseVec& gfq(const Tuple& x);
  SparseVec hp_on(std::span<const SparseVec> args);
  SparseVec h_apply(const SparseVec& v) const;

  const TransferDiagram& t_;
  const AInfAlgebra& a_;
  MapFamily b_;
  std::vector<int> deg_;
  std::vector<SparseVec> hcol_, gfcol_;
  std::map<Tuple, SparseVec> p_, q_, hp_, hq_, gfq_, pp_;
};

/// Converts each component between a map family and its suspension
/// (the conversion is an involution).
MapFamily suspend(const MapFamily& family, const GradedSpace& src);

AInfTransfer transfer_ainf(const TransferDiagram& t, const AInfAlgebra& big, const TransferOptions& opt = {});

/// L-infinity transfer by summation over set partitions (trees).
LInfAlgebra transfer_linf(const TransferDiagram& t, const LInfAlgebra& big, const TransferOptions& opt = {});

struct PairTransfer {
  LInfPair minimal;
  TransferDiagram algebra_diagram, module_diagram;
  int max_arity = 0;
};

/// Transfers a pair to its cohomology through L (+) M with the
/// block-diagonal splitting.
PairTransfer transfer_pair(const LInfPair& p, const TransferOptions& opt = {});

/// Evaluates a small-side filter that keeps only tuples whose algebra slots
/// lie in degree d (the module slot is free).
std::function<bool(const Tuple&)> algebra_slots_in_degree(const GradedSpace& l_small, int d, int l_dim);

/// Lists entries of m violating weight(out) = sum weight(in); the last slot
/// is read from `last` when given.
std::vector<Tuple> weight_violations(const MultiMap& m, const GradedSpace& in, const GradedSpace& out,
                                     const GradedSpace* last = nullptr);

struct VanishingBound {
  bool weights_ok = false;            ///< W_0 H^1 = 0
  std::vector<std::string> offenders; ///< degree-1 basis elements of weight <= 0
  std::optional<int> n0;              ///< certified bound from weights
  int theoretical = 0;                ///< 2 * top module degree + 2
  bool deligne_range = false;         ///< weights of H^j lie in [0, 2j]
  int empirical = 0;                  ///< largest n with m_{n+1}(w^n, -) != 0 in the tables
  int scanned_arity = 0;
  std::vector<std::string> violations;
};

/// m_{n+1}(w, ..., w, eta) = 0 for n > n0 where w ranges over H^1 of the
/// algebra; n0 from the weight grading.
VanishingBound vanishing_bound(const LInfPair& p);

}  // namespace hse
