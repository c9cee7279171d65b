#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hse/structures.hpp"

namespace hse {

/// Odd generator of a graded-commutative exterior algebra, with d(x) given
/// as a sum of monomials (sorted generator index lists).
struct ExteriorGenerator {
  std::string name;
  int deg = 1;
  std::optional<int> weight;
  std::vector<std::pair<std::vector<int>, Rational>> d;
};

/// Exterior cdga on odd generators. Throws if a generator is even, if d is
/// not homogeneous, or if d^2 != 0.
AInfAlgebra exterior_cdga(const std::vector<ExteriorGenerator>& gens);

AInfAlgebra exterior_algebra(int n, bool weighted = false);
/// Lambda(x, y, z) with dz = xy; weights x, y -> 1 and z -> 2 when weighted.
AInfAlgebra heisenberg(bool weighted = false);
AInfAlgebra torus2(bool weighted = false);
/// Lambda(x) with x of degree 1 and weight 0.
AInfAlgebra weight_zero_circle();
/// Truncated free algebra on one generator a of degree 1: basis a^0..a^top.
AInfAlgebra free_odd_truncated(int top);
/// End(V) of a complex V with basis degrees `degrees` and differential
/// delta (delta(i, j): coefficient of v_i in delta v_j), with composition
/// and d(f) = delta f - (-1)^{|f|} f delta.
AInfAlgebra endomorphism_dga(const std::vector<int>& degrees, const QMatrix& delta);
/// Three-dimensional nilpotent Lie algebra [X, Y] = Z in degree 0.
LInfAlgebra heisenberg_lie();

/// Random connected or non-connected dga with exactly dims[d] basis elements
/// in degree d: a monomial algebra with an inner differential [D, -],
/// followed by a random change of basis in each degree. Throws
/// std::invalid_argument for unsatisfiable dims.
AInfAlgebra random_dga(std::uint64_t seed, const std::vector<int>& dims);

/// Random weight-graded cdga: Chevalley-Eilenberg algebra of a random
/// two-step nilpotent Lie algebra, possibly with extra closed generators,
/// after a random change of basis inside each (degree, weight) block.
AInfAlgebra random_cdga(std::uint64_t seed, int max_dim, bool weighted = true);

/// Conjugates every product by a random invertible change of basis inside
/// each (degree, weight) block; the degree-0 unit block is kept if
/// keep_degree_zero.
AInfAlgebra random_change_of_basis(const AInfAlgebra& a, std::mt19937_64& rng, bool keep_degree_zero = true);

/// Conjugates by the given basis change (columns are new basis vectors).
AInfAlgebra change_of_basis(const AInfAlgebra& a, const QMatrix& p);

}  // namespace hse
