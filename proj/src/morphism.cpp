#include <functional>
#include <stdexcept>

#include "hse/parallel.hpp"
#include "hse/permutation.hpp"
#include "hse/structures.hpp"

namespace hse {

namespace {

SparseVec eval_slot(const MultiMap& m, const Tuple& x, std::size_t at, std::size_t width, const SparseVec& v) {
  std::vector<SparseVec> args;
  for (std::size_t s = 0; s < at; ++s) args.push_back(unit_vector(x[s]));
  args.push_back(v);
  for (std::size_t s = at + width; s < x.size(); ++s) args.push_back(unit_vector(x[s]));
  return eval_map(m, args);
}

void check_components(const InfMorphism& f, int src_dim, int dst_dim) {
  for (const auto& [n, c] : f.components) {
    if (c.arity() != n || c.shift() != 1 - n)
      throw std::invalid_argument("morphism component " + std::to_string(n) + " has the wrong shape");
    for (const auto& [t, v] : c.entries()) {
      for (int i : t)
        if (i >= src_dim) throw std::invalid_argument("morphism input index exceeds source dimension");
      for (const auto& [o, x] : v)
        if (o >= dst_dim) throw std::invalid_argument("morphism output index exceeds target dimension");
    }
  }
}

CheckReport collect(const std::string& name, int max_arity, const std::vector<std::pair<int, std::vector<Tuple>>>& sets,
                    const std::function<bool(const Tuple&, SparseVec&)>& eval) {
  CheckReport rep;
  rep.identity = name;
  rep.max_arity = max_arity;
  for (const auto& [n, tuples] : sets) {
    std::vector<SparseVec> res(tuples.size());
    std::vector<char> done(tuples.size(), 0);
    parallel_for(tuples.size(), [&](std::size_t i) { done[i] = eval(tuples[i], res[i]) ? 1 : 0; });
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      if (!done[i]) continue;
      ++rep.tuples_checked;
      if (res[i].empty()) continue;
      ++rep.violation_count;
      if (rep.violations.size() < CheckReport::kStoredViolations) rep.violations.push_back({n, tuples[i], res[i]});
    }
  }
  return rep;
}

}  // namespace

CheckReport morphism_check(const AInfAlgebra& src, const AInfAlgebra& dst, const InfMorphism& f,
                           const CheckOptions& opt) {
  if (f.kind != MorphismKind::ainf) throw std::invalid_argument("expected an A-infinity morphism");
  check_components(f, src.space.dim(), dst.space.dim());
  const auto& deg = src.space.degrees();
  std::vector<std::pair<int, std::vector<Tuple>>> sets;
  for (int n = 1; n <= opt.max_arity; ++n) sets.emplace_back(n, all_tuples(src.space.dim(), n));
  return collect("ainf-morphism", opt.max_arity, sets, [&](const Tuple& x, SparseVec& res) {
    const int n = static_cast<int>(x.size());
    if (!dst.space.has_degree(degree_sum(x, deg) + 1 - n)) return false;
    for (int q = 1; q <= n; ++q) {
      const MultiMap* inner = component(src.products, q);
      if (!inner) continue;
      int before = 0;
      for (int p = 0; p + q <= n; ++p) {
        if (p > 0) before += deg[static_cast<std::size_t>(x[static_cast<std::size_t>(p - 1)])];
        int r = n - p - q;
        const MultiMap* outer = component(f.components, p + r + 1);
        if (!outer) continue;
        SparseVec iv = (*inner)(Tuple(x.begin() + p, x.begin() + p + q));
        if (iv.empty()) continue;
        axpy(res, Rational(sign_of_parity(p + q * r + q * before)),
             eval_slot(*outer, x, static_cast<std::size_t>(p), static_cast<std::size_t>(q), iv));
      }
    }
    for (int k = 1; k <= n; ++k) {
      const MultiMap* outer = component(dst.products, k);
      if (!outer) continue;
      for (const auto& parts : compositions(n, k)) {
        std::vector<SparseVec> args;
        std::vector<int> mdeg, bdeg;
        int at = 0;
        bool zero = false;
        for (int r : parts) {
          const MultiMap* fr = component(f.components, r);
          Tuple blk(x.begin() + at, x.begin() + at + r);
          SparseVec v = fr ? (*fr)(blk) : SparseVec{};
          if (v.empty()) {
            zero = true;
            break;
          }
          args.push_back(std::move(v));
          mdeg.push_back(1 - r);
          bdeg.push_back(degree_sum(blk, deg));
          at += r;
        }
        if (zero) continue;
        int sign = sign_of_parity(block_epsilon(parts)) * tensor_koszul_sign(mdeg, bdeg);
        axpy(res, Rational(-sign), eval_map(*outer, args));
      }
    }
    return true;
  });
}

CheckReport morphism_check(const LInfAlgebra& src, const LInfAlgebra& dst, const InfMorphism& f,
                           const CheckOptions& opt) {
  if (f.kind != MorphismKind::linf) throw std::invalid_argument("expected an L-infinity morphism");
  check_components(f, src.space.dim(), dst.space.dim());
  const auto& deg = src.space.degrees();
  std::vector<std::pair<int, std::vector<Tuple>>> sets;
  for (int n = 1; n <= opt.max_arity; ++n)
    sets.emplace_back(n, opt.exhaustive ? all_tuples(src.space.dim(), n) : sorted_tuples(src.space.dim(), n));
  std::map<std::vector<int>, std::vector<Permutation>> block_cache;
  std::map<std::pair<int, int>, std::vector<Permutation>> unsh_cache;
  for (int n = 1; n <= opt.max_arity; ++n) {
    for (int i = 1; i <= n; ++i) unsh_cache.emplace(std::make_pair(i, n), unshuffles(i, n));
    for (int j = 1; j <= n; ++j)
      for (const auto& parts : compositions(n, j)) block_cache.emplace(parts, block_permutations(parts));
  }
  return collect("linf-morphism", opt.max_arity, sets, [&](const Tuple& x, SparseVec& res) {
    const int n = static_cast<int>(x.size());
    if (!dst.space.has_degree(degree_sum(x, deg) + 1 - n)) return false;
    std::vector<int> xdeg;
    for (int v : x) xdeg.push_back(deg[static_cast<std::size_t>(v)]);
    for (int i = 1; i <= n; ++i) {
      int j = n + 1 - i;
      const MultiMap* inner = component(src.brackets, i);
      const MultiMap* outer = component(f.components, j);
      if (!inner || !outer) continue;
      for (const auto& s : unsh_cache.at({i, n})) {
        auto xs = s.act<int>(x);
        SparseVec iv = (*inner)(Tuple(xs.begin(), xs.begin() + i));
        if (iv.empty()) continue;
        int sign = antisym_sign(s, xdeg) * sign_of_parity(i * (j - 1));
        axpy(res, Rational(sign), eval_slot(*outer, xs, 0, static_cast<std::size_t>(i), iv));
      }
    }
    for (int j = 1; j <= n; ++j) {
      const MultiMap* outer = component(dst.brackets, j);
      if (!outer) continue;
      Rational norm = Rational(1) / factorial(j);
      for (const auto& parts : compositions(n, j)) {
        int eps = block_epsilon(parts);
        for (const auto& t : block_cache.at(parts)) {
          auto xs = t.act<int>(x);
          std::vector<SparseVec> args;
          std::vector<int> mdeg, bdeg;
          int at = 0;
          bool zero = false;
          for (int r : parts) {
            const MultiMap* fr = component(f.components, r);
            Tuple blk(xs.begin() + at, xs.begin() + at + r);
            SparseVec v = fr ? (*fr)(blk) : SparseVec{};
            if (v.empty()) {
              zero = true;
              break;
            }
            args.push_back(std::move(v));
            mdeg.push_back(1 - r);
            bdeg.push_back(degree_sum(blk, deg));
            at += r;
          }
          if (zero) continue;
          int sign = antisym_sign(t, xdeg) * sign_of_parity(eps) * tensor_koszul_sign(mdeg, bdeg);
          axpy(res, -norm * sign, eval_map(*outer, args));
        }
      }
    }
    return true;
  });
}

CheckReport morphism_check(const LInfPair& src, const LInfPair& dst, const PairMorphism& fg, const CheckOptions& opt) {
  auto a = pair_to_algebra(src);
  auto b = pair_to_algebra(dst);
  auto f = morphism_pair_to_algebra(fg, src, dst);
  auto rep = morphism_check(a.algebra, b.algebra, f, opt);
  rep.identity = "pair-morphism";
  return rep;
}

}  // namespace hse
