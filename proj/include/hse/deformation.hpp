#pragma once

#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hse/dual_dga.hpp"
#include "hse/ring_matrix.hpp"
#include "hse/structures.hpp"

namespace hse {

/// Sparse vector with ring coefficients: basis index -> nonzero element.
using RingVec = std::map<int, Poly>;

void add_term(const Ring& r, RingVec& v, int index, const Poly& c);
RingVec ring_axpy(const Ring& r, const RingVec& a, const Rational& c, const RingVec& b);
bool is_zero(const RingVec& v);
/// Parses {label: element} pairs against a space.
RingVec ring_vector(const Ring& r, const GradedSpace& space, const std::map<std::string, std::string>& entries);
RingVec ring_vector(const Ring& r, const SparseVec& v, const Poly& c);

/// m applied to ring-valued arguments; the coefficient ring sits in degree 0.
RingVec ring_eval(const Ring& r, const MultiMap& m, std::span<const RingVec> args);

/// Largest n with omega^n possibly nonzero for omega with coefficients in
/// the maximal ideal. Throws for rings that are not artinian.
int mc_power_bound(const Ring& r);

/// Throws std::invalid_argument unless every entry of omega sits in degree
/// `deg` of the space and has zero constant term.
void validate_ring_element(const GradedSpace& space, const Ring& r, const RingVec& omega, int deg,
                           const std::string& what);

struct MCReport {
  bool passed = false;
  RingVec residual;  ///< sum of (-1)^{n(n-1)/2} l_n(omega^n)/n!
};

/// Signs: a map with i copies of omega in front of n other arguments is
/// weighted by (-1)^{in + i(i-1)/2}, the image of the sign-free twist of
/// the suspended maps.
MCReport mc_check(const LInfAlgebra& l, const Ring& r, const RingVec& omega);
/// MC sum with n <= max_power, for rings that need not be artinian.
RingVec mc_residual(const LInfAlgebra& l, const Ring& r, const RingVec& omega, int max_power);

/// Complex (M x A, d_omega) as ring matrices per degree.
struct TwistedComplex {
  Ring ring;
  GradedSpace space;
  std::map<int, RingMatrix> d;  ///< d.at(i) : M^i -> M^{i+1}, rows and columns by in_degree order

  /// Dim M^{i+1} x dim M^i, zero when not stored.
  RingMatrix differential(int i) const;
};

/// d_omega = sum_n (-1)^{n(n+1)/2} m_{n+1}(omega^n, -)/n! with n <= max_power (default: the
/// nilpotency bound). No MC or d^2 checks.
TwistedComplex twisted_complex(const LInfPair& p, const Ring& r, const RingVec& omega,
                               std::optional<int> max_power = {});

struct ModuleTwist {
  TwistedComplex complex;
  std::optional<LInfPair> twisted;  ///< over Q on (L x A, M x A), when requested
};

/// Checks that omega is MC, that (omega, 0) is MC in L (+) M, that d_omega
/// equals the restriction of the twisted unary map of L (+) M, and that
/// d_omega^2 = 0. Throws std::invalid_argument if omega is not MC and
/// std::logic_error if a structural check fails.
ModuleTwist twist_module(const LInfPair& p, const Ring& r, const RingVec& omega, bool build_pair = false);

/// Base change to an artinian ring, as an L-infinity algebra over Q on the
/// basis label@monomial.
LInfAlgebra tensor_up(const LInfAlgebra& l, const Ring& r);
LInfPair tensor_up(const LInfPair& p, const Ring& r);
/// Coordinates of a ring vector in tensor_up(...).space.
SparseVec flatten(const Ring& r, const RingVec& v);
RingVec unflatten(const Ring& r, const SparseVec& v);

/// l^w_n(a) = sum_i (-1)^{in + i(i-1)/2} l_{i+n}(w^i, a)/i! over Q, for i <= max_power.
LInfAlgebra twist_by(const LInfAlgebra& b, const SparseVec& w, int max_power, int max_arity);
/// Twist of L x A by an MC element, over Q. Throws if omega is not MC.
LInfAlgebra twist_algebra(const LInfAlgebra& l, const Ring& r, const RingVec& omega, int max_arity = 0);
/// Twisted algebra and module computed separately, over Q.
LInfPair twist_pair(const LInfPair& p, const Ring& r, const RingVec& omega, int max_arity = 0);

/// I_s(d^{i-1} (+) d^i) with s = dim M^i - k + 1.
Ideal jump_ideal(const TwistedComplex& t, int i, int k);
bool def_ik_membership(const LInfPair& p, const Ring& r, const RingVec& omega, int i, int k);

/// z = z1 + z0 dt with z1 in L^1 x m_A[t] and z0 in L^0 x m_A[t], both over
/// DualDGA::ring().
struct HomotopyWitness {
  RingVec z1, z0;
};

struct WitnessReport {
  bool shape_ok = false, equation_ok = false, start_ok = false, end_ok = false;
  RingVec residual, residual_dt;
  bool passed() const { return shape_ok && equation_ok && start_ok && end_ok; }
};

/// MC equation in L x A[t, dt] and the endpoints z(0,0) = omega1, z(1,0) = omega2.
WitnessReport homotopy_witness_check(const LInfAlgebra& l, const Ring& base, const HomotopyWitness& z,
                                     const RingVec& omega1, const RingVec& omega2);
/// Witness with constant dt part xi (in L^0 x m_A) starting at omega1,
/// obtained by integrating the flow d z1/dt = (dt part of the MC sum).
HomotopyWitness gauge_witness(const LInfAlgebra& l, const Ring& base, const RingVec& omega1, const RingVec& xi);
/// z1(c), in the base ring.
RingVec witness_at(const Ring& base, const HomotopyWitness& z, const Rational& c);

struct TangentSpace {
  enum class Kind { full, empty, subspace };
  Kind kind = Kind::full;
  QMatrix basis;  ///< columns in coordinates of H^1 (in_degree(1) order)
  int h = 0;      ///< dim M^i
};
std::string to_string(TangentSpace::Kind k);

/// Tangent space of the jump functor at the origin for a minimal pair:
/// full if k < h, empty if k > h, else the kernel of a -> (m2(a, -) on
/// M^{i-1} and M^i). Throws std::invalid_argument for non-minimal input.
TangentSpace tangent_space(const LInfPair& p, int i, int k);

/// MC element built degree by degree over the monomial basis: each new
/// homogeneous piece is a random l_1-cocycle correction solving the current
/// residual. Throws std::runtime_error when an obstruction does not lie in
/// the image of l_1.
RingVec sample_mc(const LInfAlgebra& l, const Ring& r, std::mt19937_64& rng, int spread = 2);

}  // namespace hse
