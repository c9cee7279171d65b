#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hse/ring.hpp"

namespace hse {

enum class Truth { no, yes, unknown };
std::string to_string(Truth t);

/// Ideal given by generators in canonical form; zero generators are dropped
/// and repeated generators (up to a rational factor) merged.
struct Ideal {
  std::vector<Poly> gens;
  std::vector<std::string> provenance;  ///< one tag per generator
};

Ideal make_ideal(const Ring& r, const std::vector<Poly>& gens, const std::vector<std::string>& provenance = {});
Ideal zero_ideal();
Ideal unit_ideal(const Ring& r, const std::string& tag = "unit");

bool ideal_is_zero(const Ideal& i);
/// Exact for artinian rings; a generator with nonzero constant term is a
/// unit there. Elsewhere decided through ideal_contains(1).
Truth ideal_is_unit(const Ring& r, const Ideal& i);

/// Membership of f. Artinian rings (including degree-truncated polynomial
/// rings): exact linear algebra over the monomial basis. Untruncated
/// polynomial rings: searches combinations up to degree_bound (default
/// max(deg f, deg of generators)) and answers no only when f and all
/// generators are homogeneous, otherwise unknown.
Truth ideal_contains(const Ring& r, const Ideal& i, const Poly& f, std::optional<int> degree_bound = {});
/// Every generator of j lies in i.
Truth ideal_contains(const Ring& r, const Ideal& i, const Ideal& j, std::optional<int> degree_bound = {});
Truth ideals_equal(const Ring& r, const Ideal& a, const Ideal& b, std::optional<int> degree_bound = {});

Ideal ideal_sum(const Ring& r, const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ring& r, const Ideal& a, const Ideal& b);
/// Image of the generators in another ring (see Ring::map_to).
Ideal ideal_image(const Ring& from, const Ideal& i, const Ring& to);
/// Drops generators already in the ideal of the previously kept ones
/// (artinian rings only; other rings are returned unchanged).
Ideal minimize(const Ring& r, const Ideal& i);

/// Representation of the Q-span of an ideal inside a finite monomial set.
class IdealSpan {
 public:
  IdealSpan(const Ring& r, std::vector<Monomial> monomials);
  /// Adds every monomial multiple of g that stays inside the monomial set.
  void add_generator(const Poly& g);
  bool contains(const Poly& f) const;
  std::size_t dimension() const { return rows_.size(); }
  bool full() const { return rows_.size() == index_.size(); }

 private:
  using Row = std::map<int, Rational>;
  void insert(Row v);
  Row reduced(Row v) const;
  Row to_row(const Poly& f, bool& outside) const;

  const Ring& ring_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, int, GrlexLess> index_;
  std::map<int, Row> rows_;  ///< pivot column -> row with leading 1 at the pivot
};

}  // namespace hse
