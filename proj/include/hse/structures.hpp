#pragma once

#include <map>
#include <string>
#include <vector>

#include "hse/graded_space.hpp"
#include "hse/linalg.hpp"
#include "hse/multimap.hpp"

namespace hse {

using MapFamily = std::map<int, MultiMap>;  ///< arity -> component; absent = zero

/// A-infinity algebra: products nu_n of degree 2-n.
struct AInfAlgebra {
  GradedSpace space;
  MapFamily products;
};

/// L-infinity algebra: graded antisymmetric brackets l_n of degree 2-n.
struct LInfAlgebra {
  GradedSpace space;
  MapFamily brackets;
};

/// L-infinity module over an algebra whose space is given separately:
/// m_n : L^{n-1} x M -> M of degree 2-n, antisymmetric in the L slots.
struct LInfModule {
  GradedSpace space;
  MapFamily actions;
};

struct LInfPair {
  LInfAlgebra algebra;
  LInfModule module;
};

enum class MorphismKind { ainf, linf, module };

/// Components f_k of degree 1-k. For module morphisms the last slot is the
/// module slot.
struct InfMorphism {
  MorphismKind kind = MorphismKind::ainf;
  MapFamily components;
};

struct PairMorphism {
  InfMorphism algebra;  ///< f : L -> L'
  InfMorphism module;   ///< g : M -> M' over f
};

const MultiMap* component(const MapFamily& family, int n);
int top_arity(const MapFamily& family);

/// Empty component of the right shape.
MultiMap ainf_product(int n);
MultiMap linf_bracket(const GradedSpace& L, int n);
MultiMap module_action(const GradedSpace& L, int n);
MultiMap ainf_morphism_component(int n);
MultiMap linf_morphism_component(const GradedSpace& src, int n);
MultiMap module_morphism_component(const GradedSpace& L, int n);

/// Throws std::invalid_argument if a component has the wrong shape, refers to
/// basis elements out of range, or is not homogeneous of its degree.
void validate(const AInfAlgebra& a);
void validate(const LInfAlgebra& l);
void validate(const LInfPair& p);

/// Matrix of an arity-1 map, rows indexed by the target basis.
QMatrix unary_matrix(const MapFamily& family, int src_dim, int dst_dim);

/// Whether an arity-1 map of complexes induces an isomorphism on cohomology.
bool is_quasi_isomorphism(const QMatrix& f1, const QMatrix& src_d, const QMatrix& dst_d, const GradedSpace& src,
                          const GradedSpace& dst);

struct Violation {
  int arity = 0;
  Tuple input;
  SparseVec residual;
};

struct CheckReport {
  std::string identity;
  int max_arity = 0;
  std::size_t tuples_checked = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  ///< at most kStoredViolations kept
  bool passed() const { return violation_count == 0; }
  static constexpr std::size_t kStoredViolations = 64;
};

struct CheckOptions {
  int max_arity = 4;
  /// Check every ordered tuple instead of only canonical ones for
  /// antisymmetric identities.
  bool exhaustive = false;
};

CheckReport stasheff_check(const AInfAlgebra& a, const CheckOptions& opt = {});
CheckReport jacobi_check(const LInfAlgebra& l, const CheckOptions& opt = {});
CheckReport module_check(const LInfPair& p, const CheckOptions& opt = {});

CheckReport morphism_check(const AInfAlgebra& src, const AInfAlgebra& dst, const InfMorphism& f,
                           const CheckOptions& opt = {});
CheckReport morphism_check(const LInfAlgebra& src, const LInfAlgebra& dst, const InfMorphism& f,
                           const CheckOptions& opt = {});
/// Checks (f, g) through f (+) g on the direct-sum algebras.
CheckReport morphism_check(const LInfPair& src, const LInfPair& dst, const PairMorphism& fg,
                           const CheckOptions& opt = {});

/// l_n = sum over S_n of chi(sigma) nu_n(a_sigma). Verifies the Stasheff
/// relations up to verify_arity first (0 skips) and throws on failure.
LInfAlgebra antisymmetrize(const AInfAlgebra& a, int verify_arity = 4);
InfMorphism antisymmetrize(const InfMorphism& f, const GradedSpace& src);

/// The regular pair of an A-infinity algebra: the antisymmetrized algebra
/// acting on the underlying space through its own products.
LInfPair regular_pair(const AInfAlgebra& a, int verify_arity = 4);

/// Which basis elements of a direct sum L (+) M belong to M.
struct Splitting {
  std::vector<int> algebra_part;
  std::vector<int> module_part;
};

struct PairAlgebra {
  LInfAlgebra algebra;
  Splitting splitting;
};

/// The L-infinity algebra L (+) M; labels become "L." + label and "M." + label.
PairAlgebra pair_to_algebra(const LInfPair& p);
/// Recovers the pair from an algebra on L (+) M respecting the splitting;
/// throws std::invalid_argument if the splitting is not respected.
LInfPair algebra_to_pair(const LInfAlgebra& j, const Splitting& s);
LInfModule algebra_to_module(const LInfAlgebra& j, const Splitting& s);

InfMorphism morphism_pair_to_algebra(const PairMorphism& fg, const LInfPair& src, const LInfPair& dst);
PairMorphism split_pair_morphism(const InfMorphism& f, const PairAlgebra& src, const PairAlgebra& dst);

}  // namespace hse
