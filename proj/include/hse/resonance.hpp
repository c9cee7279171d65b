#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hse/deformation.hpp"
#include "hse/transfer.hpp"

namespace hse {

/// (M x R, d_univ) for omega_univ = sum_j e_j x_j, with e_j running over the
/// degree-1 basis of the algebra and R = Q[x_1..x_b].
struct UniversalComplex {
  TwistedComplex complex;
  RingVec omega;
  std::vector<int> h1;  ///< algebra index behind x_j
  bool exact = false;   ///< finite sum (exact), or jets truncated at degree `bound`
  int bound = 0;        ///< largest power of omega_univ kept
};

/// Exact mode when n0 is given (R untruncated), otherwise R truncated at
/// degree trunc. Throws std::invalid_argument if omega_univ is not MC or
/// when neither bound is given; std::logic_error if d_univ^2 != 0.
UniversalComplex universal_complex(const LInfPair& p, std::optional<int> n0, std::optional<int> trunc);

/// Differential of the universal complex at a rational point of H^1.
std::map<int, QMatrix> specialize(const UniversalComplex& u, std::span<const Rational> point);
/// dim H^i of the specialized complex.
int specialized_cohomology(const UniversalComplex& u, std::span<const Rational> point, int i);

/// Deterministic rational points of small height.
std::vector<std::vector<Rational>> sample_points(int dim, int count, std::uint64_t seed);

struct SampleRow {
  std::vector<Rational> point;
  bool vanishes = false;  ///< every generator vanishes at the point
  int cohomology = 0;     ///< dim H^i of the specialized complex
  bool jumps = false;     ///< cohomology >= k
  bool consistent() const { return vanishes == jumps; }
};

struct ResonanceResult {
  UniversalComplex universal;
  int i = 0, k = 0, s = 0;  ///< s = dim M^i - k + 1
  Ideal ideal;
  std::vector<SampleRow> samples;
  bool samples_consistent() const;
};

struct ResonanceOptions {
  bool exact = false;          ///< n0 from subtorus_hypothesis_check
  std::optional<int> trunc;    ///< default: max(s, 1) + 2
  int samples = 0;
  std::uint64_t seed = 1;
};

/// Jump ideal J^i_k of the universal complex of a minimal pair.
ResonanceResult resonance_ideal(const LInfPair& p, int i, int k, const ResonanceOptions& opt = {});

/// Universal complex of the dga itself (the pair (A, A)) over the coordinate
/// ring of H^1(A), with omega_univ on cocycle representatives. Throws
/// std::invalid_argument unless A^0 = Q and A sits in degrees >= 0.
UniversalComplex dga_universal_complex(const AInfAlgebra& a);
ResonanceResult dga_resonance_ideal(const AInfAlgebra& a, int i, int k, int samples = 0, std::uint64_t seed = 1);

struct TangentConeReport {
  int i = 0, k = 0, s = 0;
  int trunc = 0;
  std::string ring;
  std::size_t minors = 0;
  std::size_t nonzero_linear = 0;     ///< nonzero minors of the linearized matrix
  std::vector<std::string> mismatches;
  Ideal linear_ideal;                 ///< J^i_k of the linearized universal complex
  Ideal initial_forms;                ///< degree-s parts of the d_univ minors
  bool passed() const { return mismatches.empty(); }
};

/// Compares, minor by minor, the linearized universal matrix (omega_univ
/// inserted once) with the degree-s part of the full d_univ minors on the
/// minimal pair of A.
TangentConeReport tangent_cone_check(const AInfAlgebra& a, int i, int k, std::optional<int> trunc = {});
TangentConeReport tangent_cone_check(const LInfPair& minimal, int i, int k, std::optional<int> trunc = {});

struct SubtorusReport {
  VanishingBound bound;
  bool certified = false;
  std::optional<int> exact_n0;  ///< bound handed to exact resonance
};

SubtorusReport subtorus_hypothesis_check(const LInfPair& p);

}  // namespace hse
