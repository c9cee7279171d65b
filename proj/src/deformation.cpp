#include "hse/deformation.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hse {

void add_term(const Ring& r, RingVec& v, int index, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = v.emplace(index, c);
  if (fresh) return;
  it->second = r.add(it->second, c);
  if (it->second.is_zero()) v.erase(it);
}

RingVec ring_axpy(const Ring& r, const RingVec& a, const Rational& c, const RingVec& b) {
  RingVec out = a;
  for (const auto& [i, p] : b) add_term(r, out, i, r.scale(p, c));
  return out;
}

bool is_zero(const RingVec& v) { return v.empty(); }

RingVec ring_vector(const Ring& r, const GradedSpace& space, const std::map<std::string, std::string>& entries) {
  RingVec v;
  for (const auto& [label, text] : entries) add_term(r, v, space.index(label), r.parse_element(text));
  return v;
}

RingVec ring_vector(const Ring& r, const SparseVec& v, const Poly& c) {
  RingVec out;
  for (const auto& [i, x] : v) add_term(r, out, i, r.scale(c, x));
  return out;
}

RingVec ring_eval(const Ring& r, const MultiMap& m, std::span<const RingVec> args) {
  if (static_cast<int>(args.size()) != m.arity()) throw std::invalid_argument("argument count does not match arity");
  RingVec out;
  if (m.empty()) return out;
  Tuple t(args.size());
  std::function<void(std::size_t, const Poly&)> rec = [&](std::size_t pos, const Poly& coef) {
    if (pos == args.size()) {
      for (const auto& [o, c] : m(t)) add_term(r, out, o, r.scale(coef, c));
      return;
    }
    for (const auto& [i, p] : args[pos]) {
      Poly next = r.mul(coef, p);
      if (next.is_zero()) continue;
      t[pos] = i;
      rec(pos + 1, next);
    }
  };
  rec(0, r.one());
  return out;
}

int mc_power_bound(const Ring& r) {
  auto n = r.nilpotency_order();
  if (!n) throw std::invalid_argument("ring " + r.descriptor() + " is not artinian");
  return *n - 1;
}

void validate_ring_element(const GradedSpace& space, const Ring& r, const RingVec& omega, int deg,
                           const std::string& what) {
  for (const auto& [i, p] : omega) {
    if (i < 0 || i >= space.dim()) throw std::invalid_argument(what + ": index out of range");
    if (space.degree(i) != deg)
      throw std::invalid_argument(what + ": " + space[i].label + " is not in degree " + std::to_string(deg));
    if (r.reduce(p) != p) throw std::invalid_argument(what + ": entry not in canonical form");
    if (p.constant_term() != 0)
      throw std::invalid_argument(what + ": entry at " + space[i].label + " has a constant term");
  }
}

namespace {

// Sign of map_{n+i}(w^i, x_1..x_n) in the twist by w: the suspended maps
// twist without signs and the decalage contributes i*n + i(i-1)/2.
int twist_sign(int i, int n) { return (i * n + i * (i - 1) / 2) % 2 == 0 ? 1 : -1; }

// sum over n <= hi of twist_sign(n, extra) map_{n+extra}(w^n, tail) / n!.
RingVec power_sum(const Ring& r, const MapFamily& maps, const RingVec& w, std::span<const RingVec> tail, int hi) {
  RingVec out;
  const int extra = static_cast<int>(tail.size());
  const int top = top_arity(maps);
  for (int n = extra == 0 ? 1 : 0; n <= hi && n + extra <= top; ++n) {
    const MultiMap* m = component(maps, n + extra);
    if (!m || m->empty()) continue;
    std::vector<RingVec> args(static_cast<std::size_t>(n), w);
    args.insert(args.end(), tail.begin(), tail.end());
    out = ring_axpy(r, out, Rational(twist_sign(n, extra)) / factorial(n), ring_eval(r, *m, args));
  }
  return out;
}

std::map<int, int> local_positions(const GradedSpace& s, int deg) {
  std::map<int, int> pos;
  const auto idx = s.in_degree(deg);
  for (std::size_t k = 0; k < idx.size(); ++k) pos.emplace(idx[k], static_cast<int>(k));
  return pos;
}

struct BasisIndex {
  std::vector<Monomial> mons;
  std::map<Monomial, int, GrlexLess> pos;
  explicit BasisIndex(const Ring& r) {
    if (!r.artinian()) throw std::invalid_argument("base change needs an artinian ring");
    mons = r.basis();
    for (std::size_t k = 0; k < mons.size(); ++k) pos.emplace(mons[k], static_cast<int>(k));
  }
  int size() const { return static_cast<int>(mons.size()); }
};

GradedSpace tensor_space(const GradedSpace& s, const Ring& r, const BasisIndex& b) {
  std::vector<BasisElement> out;
  for (int i = 0; i < s.dim(); ++i)
    for (const auto& m : b.mons) out.push_back({s[i].label + "@" + r.to_string(r.monomial(m)), s.degree(i), std::nullopt});
  return GradedSpace(out);
}

// Expands a stored entry on t into every tuple of monomials whose expanded
// tuple stays canonical in the first `sym` slots.
void expand_entry(const Ring& r, const BasisIndex& b, const Tuple& t, const SparseVec& v, std::size_t sym,
                  MultiMap& dst) {
  const int da = b.size();
  Tuple big(t.size());
  std::function<void(std::size_t, const Poly&)> rec = [&](std::size_t pos, const Poly& prod) {
    if (pos == t.size()) {
      if (prod.is_zero()) return;
      const auto& [mono, c] = *prod.terms.begin();
      const int k = b.pos.at(mono);
      SparseVec w;
      for (const auto& [o, x] : v) w.emplace(o * da + k, x * c);
      dst.add(big, w);
      return;
    }
    for (int beta = 0; beta < da; ++beta) {
      big[pos] = t[pos] * da + beta;
      if (pos > 0 && pos < sym && big[pos] < big[pos - 1]) continue;
      Poly next = r.mul(prod, r.monomial(b.mons[static_cast<std::size_t>(beta)]));
      if (next.is_zero()) continue;
      rec(pos + 1, next);
    }
  };
  rec(0, r.one());
}

TwistedComplex complex_from(const LInfPair& p, const Ring& r, const RingVec& omega, int bound) {
  TwistedComplex out{r, p.module.space, {}};
  const GradedSpace& m = p.module.space;
  if (m.dim() == 0) return out;
  for (int i = m.min_degree(); i <= m.max_degree(); ++i) {
    const auto cols = m.in_degree(i);
    if (cols.empty()) continue;
    const auto rows = local_positions(m, i + 1);
    RingMatrix d(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      RingVec xi;
      xi.emplace(cols[c], r.one());
      for (const auto& [o, e] : power_sum(r, p.module.actions, omega, std::span<const RingVec>(&xi, 1), bound)) {
        auto it = rows.find(o);
        if (it == rows.end()) throw std::logic_error("twisted differential leaves degree " + std::to_string(i + 1));
        d.at(it->second, static_cast<int>(c)) = e;
      }
    }
    out.d.emplace(i, std::move(d));
  }
  return out;
}

Poly integrate_from_zero(const Ring& r, const Poly& p, int var) {
  Poly out;
  for (const auto& [m, c] : p.terms) {
    Monomial n = m;
    const int e = ++n[static_cast<std::size_t>(var)];
    out = r.add(out, r.monomial(n, c / e));
  }
  return out;
}

// dt part of the MC sum of z1 + z0 dt:
// sum_n twist_sign(n, 0)/n! sum_j (-1)^{n-1-j} l_n(z1^j, z0, z1^{n-1-j}).
RingVec dt_part(const Ring& r, const MapFamily& maps, const RingVec& z1, const RingVec& z0, int bound) {
  RingVec out;
  for (int n = 1; n <= std::min(bound, top_arity(maps)); ++n) {
    const MultiMap* m = component(maps, n);
    if (!m || m->empty()) continue;
    for (int j = 0; j < n; ++j) {
      std::vector<RingVec> args(static_cast<std::size_t>(n), z1);
      args[static_cast<std::size_t>(j)] = z0;
      const int sign = (n - 1 - j) % 2 == 0 ? twist_sign(n, 0) : -twist_sign(n, 0);
      out = ring_axpy(r, out, Rational(sign) / factorial(n), ring_eval(r, *m, args));
    }
  }
  return out;
}

bool in_max_ideal_t(const Ring& ext, const Poly& p) {
  const int t = ext.nvars() - 1;
  for (const auto& [m, c] : p.terms)
    if (monomial_degree(m) - m[static_cast<std::size_t>(t)] == 0) return false;
  return true;
}

}  // namespace

MCReport mc_check(const LInfAlgebra& l, const Ring& r, const RingVec& omega) {
  validate_ring_element(l.space, r, omega, 1, "MC element");
  MCReport rep;
  rep.residual = power_sum(r, l.brackets, omega, {}, mc_power_bound(r));
  rep.passed = rep.residual.empty();
  return rep;
}

RingVec mc_residual(const LInfAlgebra& l, const Ring& r, const RingVec& omega, int max_power) {
  return power_sum(r, l.brackets, omega, {}, max_power);
}

RingMatrix TwistedComplex::differential(int i) const {
  auto it = d.find(i);
  if (it != d.end()) return it->second;
  return RingMatrix(space.dim_in_degree(i + 1), space.dim_in_degree(i));
}

TwistedComplex twisted_complex(const LInfPair& p, const Ring& r, const RingVec& omega, std::optional<int> max_power) {
  validate_ring_element(p.algebra.space, r, omega, 1, "MC element");
  return complex_from(p, r, omega, max_power ? *max_power : mc_power_bound(r));
}

ModuleTwist twist_module(const LInfPair& p, const Ring& r, const RingVec& omega, bool build_pair) {
  if (!mc_check(p.algebra, r, omega).passed) throw std::invalid_argument("not an MC element");
  const int bound = mc_power_bound(r);
  ModuleTwist out{complex_from(p, r, omega, bound), std::nullopt};

  PairAlgebra j = pair_to_algebra(p);
  if (!mc_check(j.algebra, r, omega).passed) throw std::logic_error("(omega, 0) is not MC in L (+) M");
  const int nl = p.algebra.space.dim();
  const GradedSpace& m = p.module.space;
  for (int g = 0; g < m.dim(); ++g) {
    RingVec xi;
    xi.emplace(nl + g, r.one());
    RingVec j1 = power_sum(r, j.algebra.brackets, omega, std::span<const RingVec>(&xi, 1), bound);
    const int deg = m.degree(g);
    const auto cols = local_positions(m, deg);
    const auto rows = m.in_degree(deg + 1);
    const RingMatrix d = out.complex.differential(deg);
    RingVec expect;
    for (std::size_t k = 0; k < rows.size(); ++k) add_term(r, expect, nl + rows[k], d.at(static_cast<int>(k), cols.at(g)));
    if (j1 != expect) throw std::logic_error("twisted differential differs from the twisted L (+) M map at " + m[g].label);
  }
  if (m.dim() > 0)
    for (int i = m.min_degree(); i < m.max_degree(); ++i)
      if (!multiply(r, out.complex.differential(i + 1), out.complex.differential(i)).is_zero())
        throw std::logic_error("twisted differential does not square to zero in degree " + std::to_string(i));
  if (build_pair) out.twisted = twist_pair(p, r, omega);
  return out;
}

LInfAlgebra tensor_up(const LInfAlgebra& l, const Ring& r) {
  BasisIndex b(r);
  LInfAlgebra out;
  out.space = tensor_space(l.space, r, b);
  for (const auto& [n, m] : l.brackets) {
    MultiMap dst = linf_bracket(out.space, n);
    for (const auto& [t, v] : m.entries()) expand_entry(r, b, t, v, t.size(), dst);
    if (!dst.empty()) out.brackets.emplace(n, std::move(dst));
  }
  return out;
}

LInfPair tensor_up(const LInfPair& p, const Ring& r) {
  BasisIndex b(r);
  LInfPair out;
  out.algebra = tensor_up(p.algebra, r);
  out.module.space = tensor_space(p.module.space, r, b);
  for (const auto& [n, m] : p.module.actions) {
    MultiMap dst = module_action(out.algebra.space, n);
    for (const auto& [t, v] : m.entries()) expand_entry(r, b, t, v, t.size() - 1, dst);
    if (!dst.empty()) out.module.actions.emplace(n, std::move(dst));
  }
  return out;
}

SparseVec flatten(const Ring& r, const RingVec& v) {
  BasisIndex b(r);
  SparseVec out;
  for (const auto& [i, p] : v)
    for (const auto& [m, c] : p.terms) add_term(out, i * b.size() + b.pos.at(m), c);
  return out;
}

RingVec unflatten(const Ring& r, const SparseVec& v) {
  BasisIndex b(r);
  RingVec out;
  for (const auto& [k, c] : v) add_term(r, out, k / b.size(), r.monomial(b.mons[static_cast<std::size_t>(k % b.size())], c));
  return out;
}

LInfAlgebra twist_by(const LInfAlgebra& b, const SparseVec& w, int max_power, int max_arity) {
  LInfAlgebra out{b.space, {}};
  const GradedSpace& s = b.space;
  for (int n = 1; n <= max_arity; ++n) {
    MultiMap dst = linf_bracket(s, n);
    for (const Tuple& t : sorted_tuples(s.dim(), n)) {
      if (!s.has_degree(degree_sum(t, s.degrees()) + 2 - n)) continue;
      Tuple canon;
      if (dst.canonicalize(t, canon) == 0) continue;
      SparseVec val;
      for (int i = 0; i <= max_power; ++i) {
        const MultiMap* m = component(b.brackets, i + n);
        if (!m || m->empty()) continue;
        std::vector<SparseVec> args(static_cast<std::size_t>(i), w);
        for (int x : t) args.push_back(unit_vector(x));
        axpy(val, Rational(twist_sign(i, n)) / factorial(i), eval_map(*m, args));
      }
      if (!is_zero(val)) dst.add(t, val);
    }
    if (!dst.empty()) out.brackets.emplace(n, std::move(dst));
  }
  return out;
}

LInfAlgebra twist_algebra(const LInfAlgebra& l, const Ring& r, const RingVec& omega, int max_arity) {
  if (!mc_check(l, r, omega).passed) throw std::invalid_argument("not an MC element");
  return twist_by(tensor_up(l, r), flatten(r, omega), mc_power_bound(r), max_arity > 0 ? max_arity : top_arity(l.brackets));
}

LInfPair twist_pair(const LInfPair& p, const Ring& r, const RingVec& omega, int max_arity) {
  LInfPair out;
  const int top = max_arity > 0 ? max_arity : std::max(top_arity(p.algebra.brackets), top_arity(p.module.actions));
  out.algebra = twist_algebra(p.algebra, r, omega, top);
  LInfPair big = tensor_up(p, r);
  out.module.space = big.module.space;
  const SparseVec w = flatten(r, omega);
  const int bound = mc_power_bound(r);
  const GradedSpace& ls = big.algebra.space;
  const GradedSpace& ms = big.module.space;
  for (int n = 1; n <= top; ++n) {
    MultiMap dst = module_action(ls, n);
    for (const Tuple& head : sorted_tuples(ls.dim(), n - 1)) {
      Tuple probe = head;
      probe.push_back(0);
      Tuple canon;
      if (n > 1 && dst.canonicalize(probe, canon) == 0) continue;
      for (int xi = 0; xi < ms.dim(); ++xi) {
        if (!ms.has_degree(degree_sum(head, ls.degrees()) + ms.degree(xi) + 2 - n)) continue;
        SparseVec val;
        for (int i = 0; i <= bound; ++i) {
          const MultiMap* m = component(big.module.actions, i + n);
          if (!m || m->empty()) continue;
          std::vector<SparseVec> args(static_cast<std::size_t>(i), w);
          for (int x : head) args.push_back(unit_vector(x));
          args.push_back(unit_vector(xi));
          axpy(val, Rational(twist_sign(i, n)) / factorial(i), eval_map(*m, args));
        }
        Tuple t = head;
        t.push_back(xi);
        if (!is_zero(val)) dst.add(t, val);
      }
    }
    if (!dst.empty()) out.module.actions.emplace(n, std::move(dst));
  }
  return out;
}

Ideal jump_ideal(const TwistedComplex& t, int i, int k) {
  const int s = t.space.dim_in_degree(i) - k + 1;
  return block_diagonal_minors(t.ring, t.differential(i - 1), t.differential(i), s, "d" + std::to_string(i - 1),
                               "d" + std::to_string(i));
}

bool def_ik_membership(const LInfPair& p, const Ring& r, const RingVec& omega, int i, int k) {
  return ideal_is_zero(jump_ideal(twist_module(p, r, omega).complex, i, k));
}

WitnessReport homotopy_witness_check(const LInfAlgebra& l, const Ring& base, const HomotopyWitness& z,
                                     const RingVec& omega1, const RingVec& omega2) {
  DualDGA a(base);
  const Ring& ext = a.ring();
  WitnessReport rep;
  auto shape = [&](const RingVec& v, int deg) {
    for (const auto& [i, p] : v)
      if (i < 0 || i >= l.space.dim() || l.space.degree(i) != deg || ext.reduce(p) != p || !in_max_ideal_t(ext, p))
        return false;
    return true;
  };
  rep.shape_ok = shape(z.z1, 1) && shape(z.z0, 0);
  if (!rep.shape_ok) return rep;
  const int bound = mc_power_bound(base);
  rep.residual = power_sum(ext, l.brackets, z.z1, {}, bound);
  RingVec dz;
  for (const auto& [i, p] : z.z1) add_term(ext, dz, i, ext.derivative(p, a.t_index()));
  rep.residual_dt = ring_axpy(ext, dt_part(ext, l.brackets, z.z1, z.z0, bound), Rational(-1), dz);
  rep.equation_ok = rep.residual.empty() && rep.residual_dt.empty();
  auto same = [&](const RingVec& x, const RingVec& y) {
    RingVec yy;
    for (const auto& [i, p] : y) add_term(base, yy, i, base.reduce(p));
    return x == yy;
  };
  rep.start_ok = same(witness_at(base, z, 0), omega1);
  rep.end_ok = same(witness_at(base, z, 1), omega2);
  return rep;
}

HomotopyWitness gauge_witness(const LInfAlgebra& l, const Ring& base, const RingVec& omega1, const RingVec& xi) {
  validate_ring_element(l.space, base, omega1, 1, "MC element");
  validate_ring_element(l.space, base, xi, 0, "gauge element");
  DualDGA a(base);
  const Ring& ext = a.ring();
  const int bound = mc_power_bound(base);
  HomotopyWitness z;
  RingVec start;
  for (const auto& [i, p] : omega1) add_term(ext, start, i, a.extend(p));
  for (const auto& [i, p] : xi) add_term(ext, z.z0, i, a.extend(p));
  z.z1 = start;
  for (int iter = 0; iter <= bound + 1; ++iter) {
    RingVec next = start;
    for (const auto& [i, g] : dt_part(ext, l.brackets, z.z1, z.z0, bound))
      add_term(ext, next, i, integrate_from_zero(ext, g, a.t_index()));
    if (next == z.z1) return z;
    z.z1 = std::move(next);
  }
  throw std::logic_error("gauge flow did not stabilize");
}

RingVec witness_at(const Ring& base, const HomotopyWitness& z, const Rational& c) {
  DualDGA a(base);
  RingVec out;
  for (const auto& [i, p] : z.z1) add_term(base, out, i, a.eval(DualForm{p, Poly{}}, c));
  return out;
}

std::string to_string(TangentSpace::Kind k) {
  switch (k) {
    case TangentSpace::Kind::full:
      return "full";
    case TangentSpace::Kind::empty:
      return "empty";
    case TangentSpace::Kind::subspace:
      return "subspace";
  }
  return "subspace";
}

TangentSpace tangent_space(const LInfPair& p, int i, int k) {
  const MultiMap* l1 = component(p.algebra.brackets, 1);
  const MultiMap* m1 = component(p.module.actions, 1);
  if ((l1 && !l1->empty()) || (m1 && !m1->empty())) throw std::invalid_argument("tangent space needs a minimal pair");
  const GradedSpace& m = p.module.space;
  const auto h1 = p.algebra.space.in_degree(1);
  const int n1 = static_cast<int>(h1.size());
  TangentSpace out;
  out.h = m.dim_in_degree(i);
  if (k < out.h) {
    out.kind = TangentSpace::Kind::full;
    out.basis = QMatrix::Identity(n1, n1);
    return out;
  }
  if (k > out.h) {
    out.kind = TangentSpace::Kind::empty;
    out.basis = qzero(n1, 0);
    return out;
  }
  out.kind = TangentSpace::Kind::subspace;
  std::vector<std::pair<int, int>> rows;  // (source, target) basis pairs of the Hom spaces
  for (int j : {i - 1, i})
    for (int src : m.in_degree(j))
      for (int dst : m.in_degree(j + 1)) rows.emplace_back(src, dst);
  QMatrix tau = qzero(static_cast<Eigen::Index>(rows.size()), n1);
  if (const MultiMap* m2 = component(p.module.actions, 2))
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < n1; ++c) {
        SparseVec v = (*m2)({h1[static_cast<std::size_t>(c)], rows[r].first});
        auto it = v.find(rows[r].second);
        if (it != v.end()) tau(static_cast<Eigen::Index>(r), c) = it->second;
      }
  out.basis = nullspace(tau);
  return out;
}

RingVec sample_mc(const LInfAlgebra& l, const Ring& r, std::mt19937_64& rng, int spread) {
  const int bound = mc_power_bound(r);
  const auto one = l.space.in_degree(1), two = l.space.in_degree(2);
  QMatrix d = qzero(static_cast<Eigen::Index>(two.size()), static_cast<Eigen::Index>(one.size()));
  if (const MultiMap* l1 = component(l.brackets, 1))
    for (std::size_t c = 0; c < one.size(); ++c)
      for (const auto& [o, x] : (*l1)({one[c]})) {
        auto it = std::find(two.begin(), two.end(), o);
        if (it != two.end()) d(it - two.begin(), static_cast<Eigen::Index>(c)) = x;
      }
  const QMatrix kernel = nullspace(d);
  std::uniform_int_distribution<int> coef(-spread, spread);
  RingVec omega;
  const auto mons = r.basis();
  for (int deg = 1; deg <= bound; ++deg) {
    const RingVec residual = power_sum(r, l.brackets, omega, {}, bound);
    RingVec next = omega;
    for (const auto& mu : mons) {
      if (monomial_degree(mu) != deg) continue;
      QVector b = QVector::Constant(static_cast<Eigen::Index>(two.size()), Rational(0));
      for (const auto& [o, p] : residual) {
        auto it = p.terms.find(mu);
        if (it == p.terms.end()) continue;
        auto pos = std::find(two.begin(), two.end(), o);
        if (pos == two.end()) throw std::logic_error("MC residual outside degree 2");
        b(pos - two.begin()) = -it->second;
      }
      auto x = solve(d, b);
      if (!x) throw std::runtime_error("obstructed at " + r.to_string(r.monomial(mu)));
      QVector w = *x;
      for (Eigen::Index c = 0; c < kernel.cols(); ++c) w += Rational(coef(rng)) * kernel.col(c);
      for (std::size_t c = 0; c < one.size(); ++c)
        if (w(static_cast<Eigen::Index>(c)) != 0)
          add_term(r, next, one[c], r.monomial(mu, w(static_cast<Eigen::Index>(c))));
    }
    omega = std::move(next);
  }
  return omega;
}

}  // namespace hse
