#include "hse/structures.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hse/parallel.hpp"
#include "hse/permutation.hpp"

namespace hse {

const MultiMap* component(const MapFamily& family, int n) {
  auto it = family.find(n);
  return it == family.end() ? nullptr : &it->second;
}

int top_arity(const MapFamily& family) {
  int t = 0;
  for (const auto& [n, m] : family)
    if (!m.empty()) t = std::max(t, n);
  return t;
}

MultiMap ainf_product(int n) { return MultiMap(n, 2 - n); }
MultiMap linf_bracket(const GradedSpace& L, int n) { return MultiMap(n, 2 - n, Symmetry::antisymmetric, L.degrees()); }
MultiMap module_action(const GradedSpace& L, int n) {
  if (n == 1) return MultiMap(1, 1);
  return MultiMap(n, 2 - n, Symmetry::algebra_slots, L.degrees());
}
MultiMap ainf_morphism_component(int n) { return MultiMap(n, 1 - n); }
MultiMap linf_morphism_component(const GradedSpace& src, int n) {
  return MultiMap(n, 1 - n, Symmetry::antisymmetric, src.degrees());
}
MultiMap module_morphism_component(const GradedSpace& L, int n) {
  if (n == 1) return MultiMap(1, 0);
  return MultiMap(n, 1 - n, Symmetry::algebra_slots, L.degrees());
}

namespace {

void validate_family(const MapFamily& fam, const std::string& what, int shift_base, const GradedSpace& alg,
                     const GradedSpace& last, const GradedSpace& out, bool module_slot) {
  for (const auto& [n, m] : fam) {
    if (m.arity() != n) throw std::invalid_argument(what + ": component stored under arity " + std::to_string(n) +
                                                    " has arity " + std::to_string(m.arity()));
    if (m.shift() != shift_base - n)
      throw std::invalid_argument(what + "_" + std::to_string(n) + ": degree shift must be " +
                                  std::to_string(shift_base - n));
    for (const auto& [t, v] : m.entries()) {
      int deg = 0;
      for (std::size_t s = 0; s < t.size(); ++s) {
        const GradedSpace& sp = (module_slot && s + 1 == t.size()) ? last : alg;
        if (t[s] < 0 || t[s] >= sp.dim()) throw std::invalid_argument(what + ": input index out of range");
        deg += sp.degree(t[s]);
      }
      for (const auto& [i, c] : v) {
        if (i < 0 || i >= out.dim()) throw std::invalid_argument(what + ": output index out of range");
        if (out.degree(i) != deg + m.shift())
          throw std::invalid_argument(what + "_" + std::to_string(n) + ": entry is not homogeneous of degree " +
                                      std::to_string(m.shift()));
      }
    }
  }
}

}  // namespace

void validate(const AInfAlgebra& a) { validate_family(a.products, "nu", 2, a.space, a.space, a.space, false); }

void validate(const LInfAlgebra& l) {
  for (const auto& [n, m] : l.brackets)
    if (m.symmetry() != Symmetry::antisymmetric && n > 1)
      throw std::invalid_argument("l_" + std::to_string(n) + " must be stored as antisymmetric");
  validate_family(l.brackets, "l", 2, l.space, l.space, l.space, false);
}

void validate(const LInfPair& p) {
  validate(p.algebra);
  for (const auto& [n, m] : p.module.actions)
    if (n > 1 && m.symmetry() != Symmetry::algebra_slots)
      throw std::invalid_argument("m_" + std::to_string(n) + " must be antisymmetric in the algebra slots");
  validate_family(p.module.actions, "m", 2, p.algebra.space, p.module.space, p.module.space, true);
}

QMatrix unary_matrix(const MapFamily& family, int src_dim, int dst_dim) {
  QMatrix d = qzero(dst_dim, src_dim);
  if (const MultiMap* m = component(family, 1))
    for (const auto& [t, v] : m->entries())
      for (const auto& [i, c] : v) d(i, t[0]) = c;
  return d;
}

namespace {

QMatrix sub_block(const QMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  QMatrix b(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
        m(rows[r], cols[c]);
  return b;
}

}  // namespace

bool is_quasi_isomorphism(const QMatrix& f1, const QMatrix& src_d, const QMatrix& dst_d, const GradedSpace& src,
                          const GradedSpace& dst) {
  int lo = std::min(src.min_degree(), dst.min_degree()), hi = std::max(src.max_degree(), dst.max_degree());
  for (int d = lo; d <= hi; ++d) {
    auto s0 = src.in_degree(d), s1 = src.in_degree(d + 1), t0 = dst.in_degree(d), t1 = dst.in_degree(d + 1),
         tm = dst.in_degree(d - 1);
    QMatrix z = nullspace(sub_block(src_d, s1, s0));
    QMatrix b_src = sub_block(src_d, s0, src.in_degree(d - 1));
    QMatrix b_dst = sub_block(dst_d, t0, tm);
    auto h_src = z.cols() - rank(b_src);
    auto h_dst = nullspace(sub_block(dst_d, t1, t0)).cols() - rank(b_dst);
    if (h_src != h_dst) return false;
    QMatrix fz = sub_block(f1, t0, s0) * z;
    QMatrix joined(static_cast<Eigen::Index>(t0.size()), fz.cols() + b_dst.cols());
    joined << fz, b_dst;
    if (rank(joined) - rank(b_dst) != h_dst) return false;
  }
  return true;
}

namespace {

SparseVec eval_units_with(const MultiMap& m, const Tuple& x, std::size_t at, std::size_t width, const SparseVec& v) {
  std::vector<SparseVec> args;
  args.reserve(m.arity());
  for (std::size_t s = 0; s < at; ++s) args.push_back(unit_vector(x[s]));
  args.push_back(v);
  for (std::size_t s = at + width; s < x.size(); ++s) args.push_back(unit_vector(x[s]));
  return eval_map(m, args);
}

struct TupleSet {
  int arity;
  std::vector<Tuple> tuples;
};

template <class Eval>
CheckReport run_check(const std::string& name, int max_arity, const std::vector<TupleSet>& sets, Eval eval) {
  CheckReport rep;
  rep.identity = name;
  rep.max_arity = max_arity;
  for (const auto& set : sets) {
    std::vector<SparseVec> res(set.tuples.size());
    std::vector<char> done(set.tuples.size(), 0);
    parallel_for(set.tuples.size(), [&](std::size_t i) { done[i] = eval(set.tuples[i], res[i]) ? 1 : 0; });
    for (std::size_t i = 0; i < set.tuples.size(); ++i) {
      if (!done[i]) continue;
      ++rep.tuples_checked;
      if (res[i].empty()) continue;
      ++rep.violation_count;
      if (rep.violations.size() < CheckReport::kStoredViolations)
        rep.violations.push_back({set.arity, set.tuples[i], res[i]});
    }
  }
  return rep;
}

}  // namespace

CheckReport stasheff_check(const AInfAlgebra& a, const CheckOptions& opt) {
  const auto& deg = a.space.degrees();
  std::vector<TupleSet> sets;
  for (int n = 1; n <= opt.max_arity; ++n) sets.push_back({n, all_tuples(a.space.dim(), n)});
  return run_check("stasheff", opt.max_arity, sets, [&](const Tuple& x, SparseVec& res) {
    const int n = static_cast<int>(x.size());
    if (!a.space.has_degree(degree_sum(x, deg) + 3 - n)) return false;
    for (int q = 1; q <= n; ++q) {
      const MultiMap* inner = component(a.products, q);
      if (!inner) continue;
      int before = 0;
      for (int p = 0; p + q <= n; ++p) {
        if (p > 0) before += deg[static_cast<std::size_t>(x[static_cast<std::size_t>(p - 1)])];
        int r = n - p - q;
        const MultiMap* outer = component(a.products, p + r + 1);
        if (!outer) continue;
        SparseVec iv = (*inner)(Tuple(x.begin() + p, x.begin() + p + q));
        if (iv.empty()) continue;
        int sign = sign_of_parity(p + q * r + q * before);
        axpy(res, Rational(sign), eval_units_with(*outer, x, static_cast<std::size_t>(p), static_cast<std::size_t>(q), iv));
      }
    }
    return true;
  });
}

namespace {

const std::vector<Permutation>& cached_unshuffles(int i, int n) {
  thread_local std::map<std::pair<int, int>, std::vector<Permutation>> cache;
  auto key = std::make_pair(i, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, unshuffles(i, n)).first;
  return it->second;
}

std::vector<Tuple> module_tuples(int alg_dim, int mod_dim, int n, bool exhaustive) {
  std::vector<Tuple> out;
  auto heads = exhaustive ? all_tuples(alg_dim, n - 1) : sorted_tuples(alg_dim, n - 1);
  if (n == 1) heads = {Tuple{}};
  for (const auto& h : heads)
    for (int xi = 0; xi < mod_dim; ++xi) {
      Tuple t = h;
      t.push_back(xi);
      out.push_back(std::move(t));
    }
  return out;
}

}  // namespace

CheckReport jacobi_check(const LInfAlgebra& l, const CheckOptions& opt) {
  const auto& deg = l.space.degrees();
  std::vector<TupleSet> sets;
  for (int n = 1; n <= opt.max_arity; ++n)
    sets.push_back({n, opt.exhaustive ? all_tuples(l.space.dim(), n) : sorted_tuples(l.space.dim(), n)});
  return run_check("jacobi", opt.max_arity, sets, [&](const Tuple& x, SparseVec& res) {
    const int n = static_cast<int>(x.size());
    if (!l.space.has_degree(degree_sum(x, deg) + 3 - n)) return false;
    std::vector<int> xdeg;
    for (int v : x) xdeg.push_back(deg[static_cast<std::size_t>(v)]);
    for (int i = 1; i <= n; ++i) {
      int j = n + 1 - i;
      const MultiMap* inner = component(l.brackets, i);
      const MultiMap* outer = component(l.brackets, j);
      if (!inner || !outer) continue;
      for (const auto& s : cached_unshuffles(i, n)) {
        auto xs = s.act<int>(x);
        SparseVec iv = (*inner)(Tuple(xs.begin(), xs.begin() + i));
        if (iv.empty()) continue;
        int sign = antisym_sign(s, xdeg) * sign_of_parity(i * (j - 1));
        axpy(res, Rational(sign), eval_units_with(*outer, xs, 0, static_cast<std::size_t>(i), iv));
      }
    }
    return true;
  });
}

CheckReport module_check(const LInfPair& p, const CheckOptions& opt) {
  const auto& ldeg = p.algebra.space.degrees();
  const auto& mdeg = p.module.space.degrees();
  const int nl = p.algebra.space.dim();
  std::vector<TupleSet> sets;
  for (int n = 1; n <= opt.max_arity; ++n)
    sets.push_back({n, module_tuples(nl, p.module.space.dim(), n, opt.exhaustive)});
  return run_check("module", opt.max_arity, sets, [&](const Tuple& x, SparseVec& res) {
    const int n = static_cast<int>(x.size());
    // Encode the whole input on one index line: algebra indices as-is, the
    // module element as nl + index, so unshuffles keep it last in its block.
    std::vector<int> xdeg;
    for (int s = 0; s + 1 < n; ++s) xdeg.push_back(ldeg[static_cast<std::size_t>(x[static_cast<std::size_t>(s)])]);
    xdeg.push_back(mdeg[static_cast<std::size_t>(x.back())]);
    int total = std::accumulate(xdeg.begin(), xdeg.end(), 0);
    if (!p.module.space.has_degree(total + 3 - n)) return false;
    for (int i = 1; i <= n; ++i) {
      int j = n + 1 - i;
      for (const auto& s : cached_unshuffles(i, n)) {
        std::vector<int> pos = s.image();
        int sign = antisym_sign(s, xdeg) * sign_of_parity(i * (j - 1));
        if (i < n && pos[static_cast<std::size_t>(n - 1)] == n - 1) {
          const MultiMap* inner = component(p.algebra.brackets, i);
          const MultiMap* outer = component(p.module.actions, j);
          if (!inner || !outer) continue;
          Tuple in_t;
          for (int t = 0; t < i; ++t) in_t.push_back(x[static_cast<std::size_t>(pos[static_cast<std::size_t>(t)])]);
          SparseVec iv = (*inner)(in_t);
          if (iv.empty()) continue;
          std::vector<SparseVec> args{iv};
          for (int t = i; t < n; ++t) args.push_back(unit_vector(x[static_cast<std::size_t>(pos[static_cast<std::size_t>(t)])]));
          axpy(res, Rational(sign), eval_map(*outer, args));
        } else {
          const MultiMap* inner = component(p.module.actions, i);
          const MultiMap* outer = component(p.module.actions, j);
          if (!inner || !outer) continue;
          Tuple in_t;
          int d1 = 0, d2 = 0;
          for (int t = 0; t < i; ++t) {
            int at = pos[static_cast<std::size_t>(t)];
            in_t.push_back(x[static_cast<std::size_t>(at)]);
            d1 += xdeg[static_cast<std::size_t>(at)];
          }
          SparseVec iv = (*inner)(in_t);
          if (iv.empty()) continue;
          std::vector<SparseVec> args;
          for (int t = i; t < n; ++t) {
            int at = pos[static_cast<std::size_t>(t)];
            args.push_back(unit_vector(x[static_cast<std::size_t>(at)]));
            d2 += xdeg[static_cast<std::size_t>(at)];
          }
          args.push_back(iv);
          int kappa = sign_of_parity((j - 1) + (i + d1) * d2);
          axpy(res, Rational(sign * kappa), eval_map(*outer, args));
        }
      }
    }
    return true;
  });
}

namespace {

template <class Body>
void for_each_permutation(int n, Body body) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  do {
    body(Permutation(im));
  } while (std::next_permutation(im.begin(), im.end()));
}

/// sum over S_k of chi(sigma) m(a_sigma(0..k-1), rest) where the first k
/// slots are permuted.
SparseVec antisym_value(const MultiMap& m, const Tuple& t, int k, std::span<const int> deg) {
  SparseVec out;
  std::vector<int> head(t.begin(), t.begin() + k);
  std::vector<int> hdeg;
  for (int v : head) hdeg.push_back(deg[static_cast<std::size_t>(v)]);
  for_each_permutation(k, [&](const Permutation& s) {
    Tuple u = s.act<int>(head);
    u.insert(u.end(), t.begin() + k, t.end());
    axpy(out, Rational(antisym_sign(s, hdeg)), m(u));
  });
  return out;
}

}  // namespace

LInfAlgebra antisymmetrize(const AInfAlgebra& a, int verify_arity) {
  if (verify_arity > 0) {
    auto rep = stasheff_check(a, {verify_arity, false});
    if (!rep.passed())
      throw std::invalid_argument("input fails the Stasheff relations (" + std::to_string(rep.violation_count) +
                                  " violations up to arity " + std::to_string(verify_arity) + ")");
  }
  LInfAlgebra l{a.space, {}};
  const auto& deg = a.space.degrees();
  for (const auto& [n, nu] : a.products) {
    MultiMap out = linf_bracket(a.space, n);
    for (const auto& t : sorted_tuples(a.space.dim(), n)) {
      if (n > 1 && sort_sign(t, deg) == 0) continue;
      if (!a.space.has_degree(degree_sum(t, deg) + 2 - n)) continue;
      out.add(t, antisym_value(nu, t, n, deg));
    }
    l.brackets.emplace(n, std::move(out));
  }
  return l;
}

InfMorphism antisymmetrize(const InfMorphism& f, const GradedSpace& src) {
  if (f.kind != MorphismKind::ainf) throw std::invalid_argument("antisymmetrize expects an A-infinity morphism");
  InfMorphism out{MorphismKind::linf, {}};
  const auto& deg = src.degrees();
  for (const auto& [n, fn] : f.components) {
    MultiMap c = linf_morphism_component(src, n);
    for (const auto& t : sorted_tuples(src.dim(), n)) {
      if (n > 1 && sort_sign(t, deg) == 0) continue;
      c.add(t, antisym_value(fn, t, n, deg));
    }
    out.components.emplace(n, std::move(c));
  }
  return out;
}

LInfPair regular_pair(const AInfAlgebra& a, int verify_arity) {
  LInfPair p;
  p.algebra = antisymmetrize(a, verify_arity);
  p.module.space = a.space;
  const auto& deg = a.space.degrees();
  for (const auto& [n, nu] : a.products) {
    MultiMap out = module_action(a.space, n);
    for (const auto& t : module_tuples(a.space.dim(), a.space.dim(), n, false)) {
      Tuple head(t.begin(), t.end() - 1);
      if (n > 1 && sort_sign(head, deg) == 0) continue;
      out.add(t, antisym_value(nu, t, n - 1, deg));
    }
    p.module.actions.emplace(n, std::move(out));
  }
  return p;
}

}  // namespace hse
