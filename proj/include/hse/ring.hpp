#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hse/rational.hpp"

namespace hse {

using Monomial = std::vector<int>;  ///< exponent vector, one entry per ring variable

/// Graded lexicographic order.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

int monomial_degree(const Monomial& m);

/// Polynomial in canonical sparse form: no zero coefficients stored.
struct Poly {
  std::map<Monomial, Rational, GrlexLess> terms;

  bool is_zero() const { return terms.empty(); }
  /// Highest total degree; -1 for zero.
  int degree() const;
  /// Lowest total degree; -1 for zero.
  int low_degree() const;
  Rational constant_term() const;
  bool is_homogeneous() const;
  void add_term(const Monomial& m, const Rational& c);
  bool operator==(const Poly&) const = default;
};

enum class RingKind { field, truncated_local, polynomial };

/// Descriptor of a coefficient ring over Q. Truncation acts on the degree in
/// the variables flagged `truncated`; other variables (e.g. the t of A[t])
/// are never truncated.
struct RingSpec {
  RingKind kind = RingKind::field;
  std::vector<std::string> vars;
  std::vector<bool> truncated;
  int order = 0;             ///< truncated_local: m^order = 0
  std::optional<int> trunc;  ///< polynomial: terms of degree > trunc are dropped
};

class Ring {
 public:
  Ring() = default;
  explicit Ring(RingSpec spec);

  /// "Q", "Q[e]/(e^3)", "Q[x1..x4]/(m^5)", "Q[x,y]/(m^3)",
  /// "poly(x1..x4, trunc=6)", "poly(x,y)". Throws std::invalid_argument.
  static Ring parse(const std::string& descriptor);
  std::string descriptor() const;

  const RingSpec& spec() const { return spec_; }
  int nvars() const { return static_cast<int>(spec_.vars.size()); }
  int var_index(const std::string& name) const;
  /// Largest kept degree in the truncated variables, if any truncation.
  std::optional<int> cutoff() const;
  /// Finite-dimensional over Q.
  bool artinian() const;
  /// Every element with zero constant term has vanishing N-th power, N returned.
  std::optional<int> nilpotency_order() const;

  /// A copy with an extra variable that is never truncated.
  Ring adjoin(const std::string& name) const;
  /// Q[x]/(m^order) on the same variables (requires a truncated_local or
  /// polynomial ring without untruncated variables).
  Ring quotient(int order) const;

  Poly zero() const { return {}; }
  Poly one() const { return constant(Rational(1)); }
  Poly constant(const Rational& c) const;
  Poly var(int i) const;
  Poly var(const std::string& name) const { return var(var_index(name)); }
  Poly monomial(const Monomial& m, const Rational& c = Rational(1)) const;

  Poly reduce(const Poly& a) const;
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly scale(const Poly& a, const Rational& c) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly pow(const Poly& a, int k) const;
  /// Partial derivative in variable i.
  Poly derivative(const Poly& a, int i) const;
  /// Substitutes a constant for variable i (the variable stays, with exponent 0).
  Poly substitute(const Poly& a, int i, const Rational& c) const;
  /// Drops variable i after setting it to c; the result lives in `target`.
  Poly eliminate(const Poly& a, int i, const Rational& c, const Ring& target) const;
  /// Re-expresses a in `target`, whose variables must extend or be a
  /// prefix of ours (dropped variables set to 0).
  Poly map_to(const Poly& a, const Ring& target) const;
  Rational eval(const Poly& a, std::span<const Rational> point) const;

  Poly parse_element(const std::string& s) const;
  std::string to_string(const Poly& a) const;

  /// Standard monomials spanning the ring over Q (artinian rings only).
  std::vector<Monomial> basis() const;
  /// Monomials of the truncated variables with degree <= bound; untruncated
  /// variables kept at exponent 0.
  std::vector<Monomial> monomials_up_to(int bound) const;

 private:
  bool keep(const Monomial& m) const;
  RingSpec spec_;
};

/// Lowest-degree homogeneous part. Throws std::invalid_argument for f = 0.
Poly initial_form(const Poly& f);
/// Homogeneous part of degree d.
Poly homogeneous_part(const Poly& f, int d);

}  // namespace hse
