#include <algorithm>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "hse/dual_dga.hpp"
#include "hse/ring_matrix.hpp"

using namespace hse;

namespace {

Poly random_poly(const Ring& r, std::mt19937& rng, int max_deg, int terms, bool constant = true) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Poly p;
  auto mons = r.artinian() ? r.basis() : r.monomials_up_to(max_deg);
  std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
  for (int k = 0; k < terms; ++k) {
    const auto& m = mons[pick(rng)];
    if (!constant && monomial_degree(m) == 0) continue;
    if (monomial_degree(m) > max_deg) continue;
    Rational c(coef(rng), 1 + static_cast<int>(rng() % 2));
    c.canonicalize();
    p = r.add(p, r.monomial(m, c));
  }
  return p;
}

RingMatrix random_matrix(const Ring& r, std::mt19937& rng, int rows, int cols, int max_deg) {
  RingMatrix m(rows, cols);
  for (auto& e : m.data) e = random_poly(r, rng, max_deg, 3);
  return m;
}

Poly leibniz(const Ring& r, const RingMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<int> perm(cols.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  Poly out;
  do {
    int sign = 1;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b)
        if (perm[a] > perm[b]) sign = -sign;
    Poly t = r.one();
    for (std::size_t k = 0; k < rows.size(); ++k)
      t = r.mul(t, m.at(rows[k], cols[static_cast<std::size_t>(perm[k])]));
    out = sign > 0 ? r.add(out, t) : r.sub(out, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Membership by a dense solve over the monomial basis of an artinian ring.
bool brute_contains(const Ring& r, const std::vector<Poly>& gens, const Poly& f) {
  const auto basis = r.basis();
  auto coords = [&](const Poly& p) {
    QVector v = QVector::Constant(static_cast<Eigen::Index>(basis.size()), Rational(0));
    for (const auto& [m, c] : p.terms) {
      auto it = std::find(basis.begin(), basis.end(), m);
      REQUIRE(it != basis.end());
      v(it - basis.begin()) = c;
    }
    return v;
  };
  std::vector<QVector> cols;
  for (const auto& g : gens)
    for (const auto& m : basis) cols.push_back(coords(r.mul(r.monomial(m), g)));
  if (cols.empty()) return f.is_zero();
  QMatrix a(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = cols[j];
  return in_column_span(a, coords(f));
}

// Invertible over a local ring: invertible constant part plus nilpotent noise.
RingMatrix random_invertible(const Ring& r, std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> coef(-2, 2);
  QMatrix c(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(i, j) = coef(rng);
  } while (rank(c) < n);
  RingMatrix m = ring_matrix(r, c);
  for (auto& e : m.data) e = r.add(e, random_poly(r, rng, 2, 2, false));
  return m;
}

}  // namespace

TEST_CASE("ring arithmetic examples") {
  Ring a = Ring::parse("Q[x]/(x^2)");
  CHECK(a.mul(a.parse_element("1+x"), a.parse_element("1-x")) == a.one());
  Ring e = Ring::parse("Q[e]/(e^2)");
  CHECK(e.mul(e.var("e"), e.var("e")).is_zero());
  Ring m = Ring::parse("Q[x1..x3]/(m^3)");
  CHECK(m.nvars() == 3);
  CHECK(m.artinian());
  CHECK(m.nilpotency_order() == 3);
  CHECK(m.basis().size() == 10);
  CHECK(m.pow(m.parse_element("x1+x2"), 3).is_zero());
  CHECK(m.to_string(m.pow(m.parse_element("x1+x2"), 2)) == "x1^2 + 2*x1*x2 + x2^2");
  Ring t = Ring::parse("poly(x,y, trunc=2)");
  CHECK(t.artinian());
  CHECK(t.mul(t.var("x"), t.parse_element("x*y + 3")) == t.parse_element("3*x"));
  Ring q = Ring::parse("Q");
  CHECK(q.nvars() == 0);
  CHECK(q.to_string(q.parse_element("3/4 - 1/4")) == "1/2");
  Ring p = Ring::parse("poly(x1..x2)");
  CHECK_FALSE(p.artinian());
  const std::vector<Rational> pt{Rational(2), Rational(-1, 3)};
  CHECK(p.eval(p.parse_element("x1^2*x2 - 3*x2"), pt) == Rational(-1, 3));
  CHECK_THROWS_AS(p.eval(p.one(), std::vector<Rational>{1}), std::invalid_argument);
  CHECK_THROWS_AS(Ring::parse("Z[x]"), std::invalid_argument);
  CHECK_THROWS_AS(m.parse_element("x9"), std::invalid_argument);
}

TEST_CASE("ring serialization round trip") {
  std::mt19937 rng(5);
  for (const char* d : {"Q", "Q[e]/(e^3)", "Q[x1..x4]/(m^5)", "poly(x1..x4, trunc=6)", "poly(x,y)", "Q[x,y]/(m^3)"}) {
    Ring r = Ring::parse(d);
    Ring back = Ring::parse(r.descriptor());
    CHECK(back.descriptor() == r.descriptor());
    CHECK(back.spec().vars == r.spec().vars);
    for (int k = 0; k < 20; ++k) {
      Poly f = random_poly(r, rng, 4, 5);
      CHECK(r.parse_element(r.to_string(f)) == f);
    }
  }
}

TEST_CASE("dual forms on the affine line") {
  DualDGA a(Ring::parse("Q[e]/(e^3)"));
  const Ring& r = a.ring();
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    DualForm x{random_poly(r, rng, 3, 4), random_poly(r, rng, 3, 4)};
    DualForm y{random_poly(r, rng, 3, 4), random_poly(r, rng, 3, 4)};
    CHECK(a.d(a.d(x)) == DualForm{});
    // d is a derivation of degree one; p has degree 0.
    DualForm xp = a.lift(x.p);
    CHECK(a.d(a.mul(xp, y)) == a.add(a.mul(a.d(xp), y), a.mul(xp, a.d(y))));
    for (Rational c : {Rational(0), Rational(1), Rational(-2, 3)}) {
      CHECK(a.eval(a.mul(x, y), c) == a.base().mul(a.eval(x, c), a.eval(y, c)));
      CHECK(a.eval(a.add(x, y), c) == a.base().add(a.eval(x, c), a.eval(y, c)));
    }
  }
  DualForm f{r.parse_element("3*t^2 + e*t - 1"), r.parse_element("t*e")};
  CHECK(a.eval(f, 1) == a.base().parse_element("2 + e"));
  CHECK(a.d(f) == DualForm{Poly{}, r.parse_element("6*t + e")});
  CHECK(a.extend(a.base().var("e")) == r.var("e"));
}

TEST_CASE("minor examples and size conventions") {
  Ring r = Ring::parse("poly(x1,x2)");
  CHECK(ideal_is_zero(minors(r, RingMatrix(3, 4), 1)));
  RingMatrix id = ring_matrix(r, QMatrix::Identity(4, 4));
  Ideal full = minors(r, id, 4);
  CHECK(ideal_is_unit(r, full) == Truth::yes);
  CHECK(ideal_is_unit(r, minors(r, id, 0)) == Truth::yes);
  CHECK(ideal_is_unit(r, minors(r, id, -1)) == Truth::yes);
  CHECK(ideal_is_zero(minors(r, id, 5)));
  CHECK(ideal_is_unit(r, minors(r, RingMatrix(0, 0), 0)) == Truth::yes);
  CHECK(ideal_is_zero(minors(r, RingMatrix(0, 3), 1)));

  RingMatrix a(2, 1), b(1, 2);
  a.at(0, 0) = r.var("x1");
  a.at(1, 0) = r.var("x2");
  b.at(0, 0) = r.neg(r.var("x2"));
  b.at(0, 1) = r.var("x1");
  RingMatrix m = block_diagonal(a, b);
  Ideal i2 = minors(r, m, 2);
  Ideal expect = make_ideal(r, {r.parse_element("x1^2"), r.parse_element("x1*x2"), r.parse_element("x2^2")});
  CHECK(ideals_equal(r, i2, expect) == Truth::yes);
  for (const auto& g : i2.gens) CHECK(g.is_homogeneous());
  CHECK(ideals_equal(r, block_diagonal_minors(r, a, b, 2), expect) == Truth::yes);
  CHECK(i2.provenance.size() == i2.gens.size());
  CHECK(i2.provenance.front().find("rows{") != std::string::npos);
}

TEST_CASE("Laplace agrees with Leibniz") {
  std::mt19937 rng(3);
  Ring r = Ring::parse("Q[x,y]/(m^4)");
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 3), cols = 2 + static_cast<int>(rng() % 3);
    RingMatrix m = random_matrix(r, rng, rows, cols, 2);
    const int s = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(rows, cols)));
    for (const auto& e : all_minors(r, m, s)) {
      std::vector<int> ri, ci;
      for (int k = 0; k < rows; ++k)
        if (e.rows >> k & 1) ri.push_back(k);
      for (int k = 0; k < cols; ++k)
        if (e.cols >> k & 1) ci.push_back(k);
      CHECK(e.value == leibniz(r, m, ri, ci));
      std::vector<int> rr(ri.rbegin(), ri.rend());
      CHECK(minor(r, m, rr, ci) == leibniz(r, m, rr, ci));
    }
  }
}

TEST_CASE("minor enumeration is deterministic across thread counts") {
  std::mt19937 rng(8);
  Ring r = Ring::parse("poly(x1..x3, trunc=4)");
  RingMatrix m = random_matrix(r, rng, 5, 5, 1);
  setenv("HSE_THREADS", "1", 1);
  auto serial = all_minors(r, m, 3);
  setenv("HSE_THREADS", "4", 1);
  auto threaded = all_minors(r, m, 3);
  unsetenv("HSE_THREADS");
  REQUIRE(serial.size() == threaded.size());
  CHECK(serial.size() == 100);
  for (std::size_t k = 0; k < serial.size(); ++k) {
    CHECK(serial[k].rows == threaded[k].rows);
    CHECK(serial[k].cols == threaded[k].cols);
    CHECK(serial[k].value == threaded[k].value);
  }
}

TEST_CASE("minor ideals are basis-change invariant") {
  std::mt19937 rng(21);
  for (const char* d : {"Q[x,y]/(m^3)", "poly(x,y, trunc=3)", "Q[e]/(e^3)"}) {
    Ring r = Ring::parse(d);
    for (int trial = 0; trial < 6; ++trial) {
      RingMatrix m = random_matrix(r, rng, 3, 4, 2);
      for (auto& e : m.data) e = r.add(e, random_poly(r, rng, 2, 1, false));
      RingMatrix pmq = multiply(r, multiply(r, random_invertible(r, rng, 3), m), random_invertible(r, rng, 4));
      for (int s = 1; s <= 3; ++s) CHECK(ideals_equal(r, minors(r, m, s), minors(r, pmq, s)) == Truth::yes);
    }
  }
}

TEST_CASE("block diagonal minors match the full expansion") {
  std::mt19937 rng(4);
  Ring r = Ring::parse("Q[x,y]/(m^4)");
  for (int trial = 0; trial < 6; ++trial) {
    RingMatrix a = random_matrix(r, rng, 2, 3, 2), b = random_matrix(r, rng, 3, 2, 2);
    for (int s = 0; s <= 5; ++s)
      CHECK(ideals_equal(r, minors(r, block_diagonal(a, b), s), block_diagonal_minors(r, a, b, s)) == Truth::yes);
  }
}

TEST_CASE("membership examples") {
  CHECK(ideal_is_zero(make_ideal(Ring::parse("Q[e]/(e^2)"), {})));
  Ring e = Ring::parse("Q[e]/(e^2)");
  Ideal ie = make_ideal(e, {e.var("e")});
  CHECK(ideal_contains(e, ie, e.var("e")) == Truth::yes);
  CHECK(ideal_contains(e, ie, e.one()) == Truth::no);
  CHECK(ideal_is_unit(e, ie) == Truth::no);
  CHECK(ideal_is_unit(e, make_ideal(e, {e.parse_element("2 + e")})) == Truth::yes);

  Ring p = Ring::parse("poly(x1,x2)");
  Ideal sq = make_ideal(p, {p.parse_element("x1^2"), p.parse_element("x1*x2"), p.parse_element("x2^2")});
  CHECK(ideal_contains(p, sq, p.parse_element("x1^3")) == Truth::yes);
  CHECK(ideal_contains(p, sq, p.parse_element("x1")) == Truth::no);
  CHECK(ideal_contains(p, sq, p.parse_element("x1*x2 - 5*x2^2")) == Truth::yes);
  Ideal nh = make_ideal(p, {p.parse_element("x1 - x1^2")});
  // x1 = (x1 - x1^2)(1 + x1 + x1^2 + ...) only in the completion.
  CHECK(ideal_contains(p, nh, p.parse_element("x1")) == Truth::unknown);
  CHECK(ideal_contains(p, nh, p.parse_element("x1*x2 - x1^2*x2"), 3) == Truth::yes);
  Ring t = Ring::parse("poly(x1,x2, trunc=2)");
  CHECK(ideal_contains(t, ideal_image(p, nh, t), t.parse_element("x1")) == Truth::yes);
  CHECK(ideal_contains(Ring::parse("Q"), make_ideal(Ring::parse("Q"), {Ring::parse("Q").one()}), Ring::parse("Q").one()) ==
        Truth::yes);
  Ring et = e.adjoin("t");
  CHECK_THROWS_AS(ideal_contains(et, make_ideal(et, {et.var("t")}), et.var("e")), std::invalid_argument);

  Ideal dup = make_ideal(p, {p.var("x1"), p.parse_element("2*x1"), Poly{}});
  CHECK(dup.gens.size() == 1);
}

TEST_CASE("artinian membership agrees with a dense solve") {
  std::mt19937 rng(17);
  for (const char* d : {"Q[x,y]/(m^4)", "Q[e]/(e^4)", "poly(x,y,z, trunc=2)"}) {
    Ring r = Ring::parse(d);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Poly> gens;
      const int ng = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < ng; ++k) gens.push_back(random_poly(r, rng, 3, 2, false));
      Ideal i = make_ideal(r, gens);
      Poly f = trial % 2 ? random_poly(r, rng, 3, 3) : r.mul(random_poly(r, rng, 2, 2), gens.front());
      CHECK((ideal_contains(r, i, f) == Truth::yes) == brute_contains(r, i.gens, f));
      Ideal small = minimize(r, i);
      CHECK(ideals_equal(r, small, i) == Truth::yes);
      CHECK(small.gens.size() <= i.gens.size());
    }
  }
}

TEST_CASE("ideal operations") {
  Ring r = Ring::parse("Q[x,y]/(m^3)");
  Ideal a = make_ideal(r, {r.var("x")}, {"a"}), b = make_ideal(r, {r.var("y")}, {"b"});
  Ideal ab = ideal_product(r, a, b);
  REQUIRE(ab.gens.size() == 1);
  CHECK(ab.gens[0] == r.parse_element("x*y"));
  CHECK(ab.provenance[0] == "a*b");
  Ideal s = ideal_sum(r, a, b);
  CHECK(ideal_contains(r, s, r.parse_element("x^2 + y")) == Truth::yes);
  CHECK(ideal_contains(r, a, s) == Truth::no);
  Ring q = r.quotient(2);
  CHECK(ideal_is_zero(ideal_image(r, ab, q)));
}

TEST_CASE("initial forms") {
  Ring r = Ring::parse("poly(x,y)");
  CHECK(initial_form(r.parse_element("x*y + y^2")) == r.parse_element("x*y + y^2"));
  CHECK(initial_form(r.parse_element("x + x^2")) == r.var("x"));
  CHECK(initial_form(r.parse_element("5 - x")) == r.constant(5));
  CHECK(homogeneous_part(r.parse_element("x + x^2 - y^2"), 2) == r.parse_element("x^2 - y^2"));
  CHECK_THROWS_AS(initial_form(Poly{}), std::invalid_argument);
}
