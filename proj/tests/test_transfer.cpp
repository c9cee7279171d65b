#include <random>

#include "doctest.h"
#include "hse/fixtures.hpp"
#include "hse/permutation.hpp"
#include "hse/transfer.hpp"

using namespace hse;

namespace {

QMatrix differential(const AInfAlgebra& a) { return unary_matrix(a.products, a.space.dim(), a.space.dim()); }

TransferDiagram split(const AInfAlgebra& a, const SplittingOptions& opt = {}) {
  return cohomology_splitting(a.space, differential(a), opt);
}

std::vector<int> dims_by_degree(const GradedSpace& v) {
  std::vector<int> d;
  for (int i = 0; i < v.dim(); ++i) {
    const auto k = static_cast<std::size_t>(v.degree(i));
    if (d.size() <= k) d.resize(k + 1, 0);
    ++d[k];
  }
  return d;
}

SparseVec slot_eval(const MultiMap& m, const Tuple& x, std::size_t at, std::size_t w, const SparseVec& v) {
  std::vector<SparseVec> a;
  for (std::size_t s = 0; s < at; ++s) a.push_back(unit_vector(x[s]));
  a.push_back(v);
  for (std::size_t s = at + w; s < x.size(); ++s) a.push_back(unit_vector(x[s]));
  return eval_map(m, a);
}

// Morphism relation on the suspension, where every sign is a Koszul sign:
// sum F(1 x b x 1) = sum b(F x ... x F).
std::size_t suspended_morphism_violations(const MapFamily& bs, const MapFamily& bt, const MapFamily& f,
                                          const GradedSpace& src, int top) {
  std::size_t bad = 0;
  const auto& deg = src.degrees();
  for (int n = 1; n <= top; ++n)
    for (const auto& x : all_tuples(src.dim(), n)) {
      SparseVec res;
      for (int q = 1; q <= n; ++q) {
        const MultiMap* in = component(bs, q);
        if (!in) continue;
        long before = 0;
        for (int p = 0; p + q <= n; ++p) {
          if (p > 0) before += deg[static_cast<std::size_t>(x[static_cast<std::size_t>(p - 1)])] - 1;
          const MultiMap* out = component(f, n - q + 1);
          if (!out) continue;
          SparseVec iv = (*in)(Tuple(x.begin() + p, x.begin() + p + q));
          if (!iv.empty())
            axpy(res, Rational(sign_of_parity(before)),
                 slot_eval(*out, x, static_cast<std::size_t>(p), static_cast<std::size_t>(q), iv));
        }
      }
      for (int k = 1; k <= n; ++k) {
        const MultiMap* out = component(bt, k);
        if (!out) continue;
        for (const auto& parts : compositions(n, k)) {
          std::vector<SparseVec> args;
          int at = 0;
          for (int r : parts) {
            const MultiMap* fr = component(f, r);
            args.push_back(fr ? (*fr)(Tuple(x.begin() + at, x.begin() + at + r)) : SparseVec{});
            at += r;
          }
          axpy(res, Rational(-1), eval_map(*out, args));
        }
      }
      if (!res.empty()) ++bad;
    }
  return bad;
}

// Dense p_3 = m2(h m2 (x) 1) - (-1)^{|a|} m2(1 (x) h m2), a brute-force
// expansion over all basis triples.
SparseVec dense_p3(const AInfAlgebra& a, const QMatrix& h, const Tuple& x) {
  const MultiMap& m2 = a.products.at(2);
  const int n = a.space.dim();
  auto mul = [&](const QVector& u, const QVector& v) {
    QVector out = QVector::Zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (u(i) == 0 || v(j) == 0) continue;
        for (const auto& [o, c] : m2({i, j})) out(o) += u(i) * v(j) * c;
      }
    return out;
  };
  auto e = [&](int i) {
    QVector v = QVector::Zero(n);
    v(i) = 1;
    return v;
  };
  QVector left = mul(h * mul(e(x[0]), e(x[1])), e(x[2]));
  QVector right = mul(e(x[0]), h * mul(e(x[1]), e(x[2])));
  QVector p = left - right * Rational(sign_of_parity(a.space.degree(x[0])));
  SparseVec out;
  for (int i = 0; i < n; ++i)
    if (p(i) != 0) out[i] = p(i);
  return out;
}

bool same_maps(const MapFamily& a, const MapFamily& b, int from, int to) {
  for (int n = from; n <= to; ++n) {
    const MultiMap* x = component(a, n);
    const MultiMap* y = component(b, n);
    const bool ex = x && !x->empty(), ey = y && !y->empty();
    if (ex != ey) return false;
    if (ex && x->entries() != y->entries()) return false;
  }
  return true;
}

int image_rank(const MultiMap* m, const std::vector<Tuple>& tuples, int out_dim) {
  if (!m) return 0;
  QMatrix cols = qzero(out_dim, static_cast<Eigen::Index>(tuples.size()));
  for (std::size_t c = 0; c < tuples.size(); ++c)
    for (const auto& [o, v] : (*m)(tuples[c])) cols(o, static_cast<Eigen::Index>(c)) = v;
  return rank(cols);
}

std::vector<Tuple> tuples_in_degree(const GradedSpace& v, int n, int d) {
  std::vector<Tuple> out;
  for (const auto& t : all_tuples(v.dim(), n)) {
    bool ok = true;
    for (int i : t) ok = ok && v.degree(i) == d;
    if (ok) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("cohomology splitting") {
  auto a = heisenberg(true);
  auto t = split(a);
  CHECK(dims_by_degree(t.small) == std::vector<int>{1, 2, 2, 1});
  CHECK(is_zero_matrix(t.small_d));
  CHECK(QMatrix(t.f * t.g) == QMatrix::Identity(t.small.dim(), t.small.dim()));
  CHECK(is_zero_matrix(QMatrix(t.h * t.h)));
  CHECK(is_zero_matrix(QMatrix(t.f * t.h)));
  CHECK(is_zero_matrix(QMatrix(t.h * t.g)));
  CHECK(t.small[1].label == "[x]");

  SUBCASE("acyclic two-term complex") {
    GradedSpace v({{"a", 0, std::nullopt}, {"b", 1, std::nullopt}});
    QMatrix d = qzero(2, 2);
    d(1, 0) = 1;
    auto c = cohomology_splitting(v, d);
    CHECK(c.small.dim() == 0);
    CHECK(c.h(0, 1) == 1);
  }
  SUBCASE("errors") {
    GradedSpace v({{"a", 0, 0}, {"b", 1, 1}});
    QMatrix d = qzero(2, 2);
    d(1, 0) = 1;
    CHECK_THROWS_AS(cohomology_splitting(v, d), std::invalid_argument);
    GradedSpace w({{"a", 0, std::nullopt}, {"b", 1, std::nullopt}, {"c", 2, std::nullopt}});
    QMatrix e = qzero(3, 3);
    e(1, 0) = 1;
    e(2, 1) = 1;
    CHECK_THROWS_AS(cohomology_splitting(w, e), std::invalid_argument);
  }
  SUBCASE("random dgas") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto r = random_dga(seed, {1, 3, 3, 2});
      auto s = split(r);
      CHECK_NOTHROW(validate(s));
      CHECK(is_zero_matrix(s.small_d));
    }
  }
}

TEST_CASE("Heisenberg Massey product") {
  auto a = heisenberg();
  auto t = split(a);
  TransferOptions opt;
  opt.max_arity = 4;
  opt.morphisms = true;
  auto r = transfer_ainf(t, a, opt);
  const auto& h = r.minimal;
  CHECK(component(h.products, 1) == nullptr);
  const auto h1 = tuples_in_degree(h.space, 2, 1);
  const MultiMap* nu2 = component(h.products, 2);
  REQUIRE(nu2);
  for (const auto& x : h1) CHECK((*nu2)(x).empty());
  const MultiMap* nu3 = component(h.products, 3);
  REQUIRE(nu3);
  bool nonzero = false;
  for (const auto& x : tuples_in_degree(h.space, 3, 1)) nonzero = nonzero || !(*nu3)(x).empty();
  CHECK(nonzero);

  // nu_3 = f p_3 g^{(x)3} against the dense oracle.
  for (const auto& y : tuples_in_degree(h.space, 3, 1)) {
    SparseVec want;
    QVector acc = QVector::Zero(a.space.dim());
    for (int i = 0; i < a.space.dim(); ++i)
      for (int j = 0; j < a.space.dim(); ++j)
        for (int k = 0; k < a.space.dim(); ++k) {
          Rational c = t.g(i, y[0]) * t.g(j, y[1]) * t.g(k, y[2]);
          if (c == 0) continue;
          for (const auto& [o, v] : dense_p3(a, t.h, {i, j, k})) acc(o) += c * v;
        }
    QVector small = t.f * acc;
    for (int o = 0; o < small.size(); ++o)
      if (small(o) != 0) want[o] = small(o);
    CHECK((*nu3)(y) == want);
  }
  CHECK(stasheff_check(h, {5, false}).passed());
  CHECK(morphism_check(h, a, r.psi, {4, false}).passed());
  CHECK(morphism_check(a, h, r.phi, {4, false}).passed());
}

TEST_CASE("p_3 matches the dense oracle on random dgas") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto a = random_dga(seed, {1, 3, 3, 2});
    auto t = split(a);
    KernelCache k(t, a);
    for (const auto& x : all_tuples(a.space.dim(), 3)) CHECK(k.p(x) == dense_p3(a, t.h, x));
    for (const auto& x : all_tuples(a.space.dim(), 2)) CHECK(k.p(x) == a.products.at(2)(x));
  }
}

TEST_CASE("transferred structures and morphisms on random dgas") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto a = random_dga(seed, {1, 3, 3, 2});
    auto t = split(a);
    TransferOptions opt;
    opt.max_arity = 4;
    opt.morphisms = true;
    auto r = transfer_ainf(t, a, opt);
    CAPTURE(seed);
    CHECK(component(r.minimal.products, 1) == nullptr);
    CHECK(stasheff_check(r.minimal, {4, false}).passed());
    CHECK(morphism_check(r.minimal, a, r.psi, {4, false}).passed());
    CHECK(morphism_check(a, r.minimal, r.phi, {3, false}).passed());
    CHECK(unary_matrix(r.psi.components, t.small.dim(), t.big.dim()) == t.g);
    CHECK(unary_matrix(r.phi.components, t.big.dim(), t.small.dim()) == t.f);
    if (seed <= 3) {
      auto bs = suspend(r.minimal.products, r.minimal.space), bt = suspend(a.products, a.space);
      CHECK(suspended_morphism_violations(bs, bt, suspend(r.psi.components, r.minimal.space), r.minimal.space, 3) ==
            0);
      CHECK(suspended_morphism_violations(bt, bs, suspend(r.phi.components, a.space), a.space, 3) == 0);
    }
  }
}

TEST_CASE("suspension is an involution") {
  auto a = random_dga(4, {1, 2, 2, 1});
  auto back = suspend(suspend(a.products, a.space), a.space);
  for (const auto& [n, m] : a.products) CHECK(back.at(n).entries() == m.entries());
}

TEST_CASE("trivial transfers") {
  SUBCASE("zero differential, h = 0") {
    auto a = exterior_algebra(3);
    auto r = transfer_ainf(split(a), a, {4, {}, true});
    CHECK(r.minimal.products.at(2).entries() == a.products.at(2).entries());
    CHECK(component(r.minimal.products, 3) == nullptr);
    CHECK(component(r.minimal.products, 4) == nullptr);
    KernelCache k(split(a), a);
    for (const auto& x : all_tuples(a.space.dim(), 2)) CHECK(k.q(x).empty());
  }
  SUBCASE("Lie algebra with zero differential") {
    auto l = heisenberg_lie();
    auto t = cohomology_splitting(l.space, qzero(3, 3));
    auto s = transfer_linf(t, l, {4, {}, false});
    CHECK(s.brackets.at(2).entries() == l.brackets.at(2).entries());
    CHECK(component(s.brackets, 3) == nullptr);
  }
  SUBCASE("abelian big side") {
    auto a = random_dga(3, {1, 3, 3, 2});
    LInfAlgebra l{a.space, {}};
    l.brackets.emplace(1, linf_bracket(a.space, 1));
    for (const auto& [t, v] : a.products.at(1).entries()) l.brackets.at(1).add(t, v);
    auto s = transfer_linf(split(a), l, {4, {}, false});
    CHECK(s.brackets.empty());
  }
}

TEST_CASE("q-kernel degrees") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto a = random_dga(seed, {1, 2, 2, 1});
    auto t = split(a);
    KernelCache k(t, a);
    const auto& deg = a.space.degrees();
    for (int n = 1; n <= 4; ++n)
      for (const auto& x : all_tuples(a.space.dim(), n)) {
        const int want = degree_sum(x, deg) + 1 - n;
        for (const auto& [o, c] : k.q(x)) CHECK(a.space.degree(o) == want);
        if (n >= 2)
          for (const auto& [o, c] : k.p(x)) CHECK(a.space.degree(o) == want + 1);
      }
  }
}

TEST_CASE("kernel cache coherence") {
  auto a = random_dga(6, {1, 3, 3, 2});
  auto t = split(a);
  KernelCache k(t, a);
  for (int n = 2; n <= 4; ++n)
    for (const auto& x : all_tuples(a.space.dim(), n)) {
      const SparseVec v = k.p(x);
      CHECK(k.p_from_scratch(x) == v);
    }
}

TEST_CASE("L-infinity transfer agrees with the antisymmetrized A-infinity transfer") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto a = random_dga(seed, {1, 3, 3, 2});
    auto t = split(a);
    auto nu = transfer_ainf(t, a, {4, {}, false});
    auto lhs = antisymmetrize(nu.minimal, 0);
    auto rhs = transfer_linf(t, antisymmetrize(a, 0), {4, {}, false});
    CAPTURE(seed);
    CHECK(same_maps(lhs.brackets, rhs.brackets, 1, 4));
    CHECK(jacobi_check(rhs, {4, false}).passed());
  }
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto a = random_cdga(seed, 6, true);
    auto t = split(a);
    auto lhs = antisymmetrize(transfer_ainf(t, a, {4, {}, false}).minimal, 0);
    auto rhs = transfer_linf(t, antisymmetrize(a, 0), {4, {}, false});
    CHECK(same_maps(lhs.brackets, rhs.brackets, 1, 4));
  }
}

TEST_CASE("weight compatibility") {
  auto a = heisenberg(true);
  std::mt19937_64 rng(11);
  auto b = random_change_of_basis(a, rng);
  for (const auto* alg : {&a, &b}) {
    auto t = split(*alg);
    auto r = transfer_ainf(t, *alg, {4, {}, true});
    for (const auto& [n, m] : r.minimal.products) CHECK(weight_violations(m, t.small, t.small).empty());
    for (const auto& [n, m] : r.psi.components) CHECK(weight_violations(m, t.small, t.big).empty());
    for (const auto& [n, m] : r.phi.components) CHECK(weight_violations(m, t.big, t.small).empty());
    for (const auto& [n, m] : r.homotopy) CHECK(weight_violations(m, t.big, t.big).empty());
  }
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto c = random_cdga(seed, 6, true);
    auto t = split(c);
    auto r = transfer_ainf(t, c, {4, {}, true});
    for (const auto& [n, m] : r.minimal.products) CHECK(weight_violations(m, t.small, t.small).empty());
    for (const auto& [n, m] : r.phi.components) CHECK(weight_violations(m, t.big, t.small).empty());
  }
}

TEST_CASE("splitting independence of Massey invariants") {
  auto a = heisenberg();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    auto b = random_change_of_basis(a, rng);
    std::vector<int> rev(static_cast<std::size_t>(b.space.dim()));
    for (int i = 0; i < b.space.dim(); ++i) rev[static_cast<std::size_t>(i)] = b.space.dim() - 1 - i;
    auto t1 = split(b);
    auto t2 = split(b, {rev, true});
    auto invariants = [&](const TransferDiagram& t) {
      auto r = transfer_ainf(t, b, {3, {}, false});
      const auto& h = r.minimal;
      const int d = h.space.dim();
      int r2 = image_rank(component(h.products, 2), all_tuples(d, 2), d);
      const auto t3 = tuples_in_degree(h.space, 3, 1);
      QMatrix cols = qzero(d, 0);
      auto append = [&](const MultiMap* m, const std::vector<Tuple>& ts) {
        if (!m) return;
        for (const auto& x : ts) {
          cols.conservativeResize(d, cols.cols() + 1);
          cols.col(cols.cols() - 1).setZero();
          for (const auto& [o, v] : (*m)(x)) cols(o, cols.cols() - 1) = v;
        }
      };
      append(component(h.products, 2), tuples_in_degree(h.space, 2, 1));
      const int base = rank(cols);
      append(component(h.products, 3), t3);
      return std::make_pair(r2, rank(cols) - base);
    };
    auto i1 = invariants(t1), i2 = invariants(t2);
    CHECK(i1 == i2);
    CHECK(i1.second > 0);
  }
}

TEST_CASE("window arity bound") {
  GradedSpace v({{"a", 2, std::nullopt}, {"b", 5, std::nullopt}});
  CHECK(window_arity_bound(v) == 4);
  CHECK(default_max_arity(v) == 3);
  GradedSpace w({{"a", 1, std::nullopt}});
  CHECK(!window_arity_bound(w));
  CHECK(default_max_arity(w) == 4);
}

TEST_CASE("pair transfer") {
  SUBCASE("regular Heisenberg pair") {
    auto a = heisenberg(true);
    auto p = regular_pair(a);
    auto r = transfer_pair(p, {4, {}, false});
    CHECK(r.minimal.algebra.space.dim() == 6);
    CHECK(r.minimal.module.space.dim() == 6);
    CHECK(module_check(r.minimal, {4, false}).passed());
    CHECK(jacobi_check(r.minimal.algebra, {4, false}).passed());
    const MultiMap* m3 = component(r.minimal.module.actions, 3);
    REQUIRE(m3);
    CHECK(!m3->empty());
    auto direct = regular_pair(transfer_ainf(split(a), a, {4, {}, false}).minimal, 0);
    CHECK(same_maps(r.minimal.module.actions, direct.module.actions, 1, 4));
    CHECK(same_maps(r.minimal.algebra.brackets, direct.algebra.brackets, 1, 4));
    for (const auto& [n, m] : r.minimal.module.actions)
      CHECK(weight_violations(m, r.minimal.algebra.space, r.minimal.module.space, &r.minimal.module.space).empty());
  }
  SUBCASE("formal pair") {
    auto a = torus2();
    auto r = transfer_pair(regular_pair(a), {4, {}, false});
    CHECK(r.minimal.module.actions.at(2).entries() == regular_pair(a).module.actions.at(2).entries());
    CHECK(component(r.minimal.module.actions, 3) == nullptr);
  }
  SUBCASE("random pairs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto p = regular_pair(random_dga(seed, {1, 2, 2, 1}));
      auto r = transfer_pair(p, {4, {}, false});
      CHECK(module_check(r.minimal, {4, false}).passed());
    }
  }
  SUBCASE("degree filter") {
    auto a = heisenberg();
    auto full = transfer_pair(regular_pair(a), {4, {}, false});
    TransferOptions opt{4, {}, false};
    const int l = full.algebra_diagram.small.dim();
    opt.filter = algebra_slots_in_degree(full.algebra_diagram.small, 1, l);
    auto part = transfer_pair(regular_pair(a), opt);
    for (const auto& [n, m] : part.minimal.module.actions) {
      const MultiMap* f = component(full.minimal.module.actions, n);
      REQUIRE(f);
      for (const auto& [t, v] : m.entries()) CHECK((*f)(t) == v);
    }
    const MultiMap* m3 = component(part.minimal.module.actions, 3);
    CHECK((m3 && !m3->empty()));
  }
}

TEST_CASE("vanishing bound") {
  auto a = heisenberg(true);
  auto r = transfer_pair(regular_pair(a), {4, {}, false});
  auto v = vanishing_bound(r.minimal);
  CHECK(v.weights_ok);
  CHECK(v.theoretical == 8);
  REQUIRE(v.n0);
  CHECK(*v.n0 == 8);
  CHECK(v.empirical >= 2);
  CHECK(v.empirical <= 8);
  CHECK(v.violations.empty());
  CHECK(v.deligne_range);

  auto t = torus2(true);
  auto formal = transfer_pair(regular_pair(t), {4, {}, false});
  CHECK(vanishing_bound(formal.minimal).empirical == 1);

  auto z = weight_zero_circle();
  auto bad = vanishing_bound(transfer_pair(regular_pair(z), {3, {}, false}).minimal);
  CHECK(!bad.weights_ok);
  CHECK(!bad.n0);
  CHECK(bad.offenders == std::vector<std::string>{"[x]"});
  CHECK_THROWS_AS(vanishing_bound(transfer_pair(regular_pair(heisenberg()), {3, {}, false}).minimal),
                  std::invalid_argument);
}
