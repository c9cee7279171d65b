#include <algorithm>
#include <stdexcept>

#include "hse/permutation.hpp"
#include "hse/transfer.hpp"

namespace hse {

namespace {

std::vector<SparseVec> matrix_columns(const QMatrix& m) {
  std::vector<SparseVec> cols(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) cols[static_cast<std::size_t>(j)][static_cast<int>(i)] = m(i, j);
  return cols;
}

SparseVec apply_columns(const std::vector<SparseVec>& cols, const SparseVec& v) {
  SparseVec out;
  for (const auto& [i, c] : v) axpy(out, c, cols[static_cast<std::size_t>(i)]);
  return out;
}

// Expands a multilinear function of basis tuples over sparse arguments.
template <class F>
void expand(std::span<const SparseVec> args, F&& on_tuple) {
  const std::size_t k = args.size();
  std::vector<SparseVec::const_iterator> it(k);
  for (std::size_t s = 0; s < k; ++s) {
    if (args[s].empty()) return;
    it[s] = args[s].begin();
  }
  Tuple t(k);
  while (true) {
    Rational c = 1;
    for (std::size_t s = 0; s < k; ++s) {
      t[s] = it[s]->first;
      c *= it[s]->second;
    }
    on_tuple(t, c);
    std::size_t s = k;
    while (s > 0) {
      --s;
      if (++it[s] != args[s].end()) break;
      it[s] = args[s].begin();
      if (s == 0) return;
    }
    if (k == 0) return;
  }
}

int block_degree(const Tuple& x, std::size_t at, int r, const std::vector<int>& deg) {
  int s = 0;
  for (int i = 0; i < r; ++i) s += deg[static_cast<std::size_t>(x[at + static_cast<std::size_t>(i)])];
  return s;
}

int arity_for(const TransferOptions& opt, const GradedSpace& small) {
  return opt.max_arity > 0 ? opt.max_arity : default_max_arity(small);
}

// Applies `value` to every small-side tuple of arity n (canonical tuples for
// antisymmetric targets) whose output degree exists, storing into m.
template <class F>
void fill_component(MultiMap& m, const GradedSpace& small, int n, int shift, bool sorted,
                    const std::function<bool(const Tuple&)>& filter, F&& value) {
  const auto& deg = small.degrees();
  auto tuples = sorted ? sorted_tuples(small.dim(), n) : all_tuples(small.dim(), n);
  for (const auto& y : tuples) {
    if (!small.has_degree(degree_sum(y, deg) + shift)) continue;
    if (sorted && sort_sign(y, deg) == 0) continue;
    if (filter && !filter(y)) continue;
    SparseVec v = value(y);
    if (!v.empty()) m.add(y, v);
  }
}

}  // namespace

std::optional<int> window_arity_bound(const GradedSpace& small) {
  if (small.dim() == 0) return 1;
  const int lo = small.min_degree(), hi = small.max_degree();
  if (lo < 2) return std::nullopt;
  for (int n = 1;; ++n)
    if (n * (lo - 1) + 2 > hi) return n;
}

int default_max_arity(const GradedSpace& small) {
  auto b = window_arity_bound(small);
  if (!b) return 4;
  return std::max(2, *b - 1);
}

MapFamily suspend(const MapFamily& family, const GradedSpace& src) {
  MapFamily out;
  const auto& deg = src.degrees();
  for (const auto& [n, m] : family) {
    MultiMap c(m.arity(), m.shift());
    for (const auto& [t, v] : m.entries()) {
      long e = static_cast<long>(t.size()) * static_cast<long>(t.size() - 1) / 2;
      for (std::size_t j = 0; j < t.size(); ++j)
        e += static_cast<long>(t.size() - 1 - j) * (deg[static_cast<std::size_t>(t[j])] - 1);
      if (e % 2 == 0)
        c.add(t, v);
      else
        c.add(t, scaled(v, Rational(-1)));
    }
    out.emplace(n, std::move(c));
  }
  return out;
}

KernelCache::KernelCache(const TransferDiagram& t, const AInfAlgebra& big)
    : t_(t), a_(big), deg_(big.space.degrees()) {
  for (const auto& [n, m] : big.products) {
    if (m.symmetry() != Symmetry::none) throw std::invalid_argument("A-infinity products must be unsymmetrized");
  }
  b_ = suspend(big.products, big.space);
  // Suspended homotopy: gf - 1 = b_1 H + H b_1.
  hcol_ = matrix_columns(QMatrix(-t.h));
  gfcol_ = matrix_columns(QMatrix(t.g * t.f));
}

int KernelCache::suspension_sign(const Tuple& x) const {
  long e = static_cast<long>(x.size()) * static_cast<long>(x.size() - 1) / 2;
  for (std::size_t j = 0; j < x.size(); ++j)
    e += static_cast<long>(x.size() - 1 - j) * (deg_[static_cast<std::size_t>(x[j])] - 1);
  return sign_of_parity(e);
}

SparseVec KernelCache::h_apply(const SparseVec& v) const { return apply_columns(hcol_, v); }

SparseVec KernelCache::p(const Tuple& x) { return scaled(sp(x), Rational(suspension_sign(x))); }
SparseVec KernelCache::q(const Tuple& x) { return scaled(sq(x), Rational(suspension_sign(x))); }
SparseVec KernelCache::psiphi(const Tuple& x) { return scaled(spsiphi(x), Rational(suspension_sign(x))); }

const SparseVec& KernelCache::sp(const Tuple& x) {
  auto it = p_.find(x);
  if (it != p_.end()) return it->second;
  SparseVec v = compute_p(x);
  return p_.emplace(x, std::move(v)).first->second;
}

const SparseVec& KernelCache::hp(const Tuple& x) {
  auto it = hp_.find(x);
  if (it != hp_.end()) return it->second;
  SparseVec v = x.size() == 1 ? unit_vector(x[0]) : h_apply(sp(x));
  return hp_.emplace(x, std::move(v)).first->second;
}

SparseVec KernelCache::compute_p(const Tuple& x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw std::invalid_argument("p-kernels start at arity 2");
  SparseVec out;
  for (int k = 2; k <= n; ++k) {
    const MultiMap* b = component(b_, k);
    if (!b || b->empty()) continue;
    for (const auto& r : compositions(n, k)) {
      std::vector<SparseVec> args;
      std::size_t at = 0;
      bool zero = false;
      for (int rs : r) {
        const SparseVec& v = hp(Tuple(x.begin() + static_cast<long>(at), x.begin() + static_cast<long>(at) + rs));
        if (v.empty()) {
          zero = true;
          break;
        }
        args.push_back(v);
        at += static_cast<std::size_t>(rs);
      }
      if (!zero) axpy(out, Rational(1), eval_map(*b, args));
    }
  }
  return out;
}

SparseVec KernelCache::p_from_scratch(const Tuple& x) const {
  KernelCache fresh(t_, a_);
  return fresh.p(x);
}

const SparseVec& KernelCache::sq(const Tuple& x) {
  auto it = q_.find(x);
  if (it != q_.end()) return it->second;
  SparseVec v = x.size() == 1 ? unit_vector(x[0]) : compute_q(x);
  return q_.emplace(x, std::move(v)).first->second;
}

const SparseVec& KernelCache::hq(const Tuple& x) {
  auto it = hq_.find(x);
  if (it != hq_.end()) return it->second;
  SparseVec v = h_apply(sq(x));
  return hq_.emplace(x, std::move(v)).first->second;
}

const SparseVec& KernelCache::gfq(const Tuple& x) {
  auto it = gfq_.find(x);
  if (it != gfq_.end()) return it->second;
  SparseVec v = apply_columns(gfcol_, sq(x));
  return gfq_.emplace(x, std::move(v)).first->second;
}

const SparseVec& KernelCache::spsiphi(const Tuple& x) {
  auto it = pp_.find(x);
  if (it != pp_.end()) return it->second;
  SparseVec v = compute_psiphi(x);
  return pp_.emplace(x, std::move(v)).first->second;
}

SparseVec KernelCache::hp_on(std::span<const SparseVec> args) {
  SparseVec out;
  expand(args, [&](const Tuple& t, const Rational& c) { axpy(out, c, hp(t)); });
  return out;
}

// (psi phi)_m = sum_k psi_k(phi_{r_1}, ..., phi_{r_k}); all maps have degree 0.
SparseVec KernelCache::compute_psiphi(const Tuple& x) {
  const int m = static_cast<int>(x.size());
  SparseVec out = gfq(x);
  for (int k = 2; k <= m; ++k)
    for (const auto& r : compositions(m, k)) {
      std::vector<SparseVec> args;
      std::size_t at = 0;
      bool zero = false;
      for (int rs : r) {
        const SparseVec& v = gfq(Tuple(x.begin() + static_cast<long>(at), x.begin() + static_cast<long>(at) + rs));
        if (v.empty()) {
          zero = true;
          break;
        }
        args.push_back(v);
        at += static_cast<std::size_t>(rs);
      }
      if (!zero) axpy(out, Rational(1), hp_on(args));
    }
  return out;
}

SparseVec KernelCache::compute_q(const Tuple& x) {
  const int n = static_cast<int>(x.size());
  SparseVec out;
  for (int k = 2; k <= n; ++k) {
    const MultiMap* b = component(b_, k);
    if (!b || b->empty()) continue;
    for (int i = 1; i <= k; ++i) {
      const int total = n - (k - i);
      if (total < i) continue;
      for (const auto& r : compositions(total, i)) {
        std::vector<SparseVec> args;
        std::size_t at = 0;
        long before = 0;
        bool zero = false;
        for (int s = 0; s < i; ++s) {
          const int rs = r[static_cast<std::size_t>(s)];
          Tuple blk(x.begin() + static_cast<long>(at), x.begin() + static_cast<long>(at) + rs);
          const SparseVec& v = s + 1 < i ? spsiphi(blk) : hq(blk);
          if (v.empty()) {
            zero = true;
            break;
          }
          if (s + 1 < i)
            for (int j : blk) before += deg_[static_cast<std::size_t>(j)] - 1;
          args.push_back(v);
          at += static_cast<std::size_t>(rs);
        }
        if (zero) continue;
        for (; at < x.size(); ++at) args.push_back(unit_vector(x[at]));
        axpy(out, Rational(sign_of_parity(before)), eval_map(*b, args));
      }
    }
  }
  return out;
}

AInfTransfer transfer_ainf(const TransferDiagram& t, const AInfAlgebra& big, const TransferOptions& opt) {
  validate(t);
  if (big.space.dim() != t.big.dim()) throw std::invalid_argument("algebra and diagram have different spaces");
  const QMatrix mu1 = unary_matrix(big.products, big.space.dim(), big.space.dim());
  if (mu1 != t.big_d) throw std::invalid_argument("diagram differential differs from the algebra's mu_1");
  AInfTransfer out;
  out.max_arity = arity_for(opt, t.small);
  out.minimal.space = t.small;
  out.phi.kind = out.psi.kind = MorphismKind::ainf;
  KernelCache cache(t, big);
  const auto gcol = matrix_columns(t.g);
  const auto fcol = matrix_columns(t.f);
  const auto hhat = matrix_columns(QMatrix(-t.h));
  const auto hcol = matrix_columns(t.h);
  auto unary = [](const std::vector<SparseVec>& cols, int shift) {
    MultiMap m(1, shift);
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (!cols[j].empty()) m.add({static_cast<int>(j)}, cols[j]);
    return m;
  };
  {
    MultiMap nu1 = unary(matrix_columns(t.small_d), 1);
    if (!nu1.empty()) out.minimal.products.emplace(1, std::move(nu1));
  }
  if (opt.morphisms) {
    out.psi.components.emplace(1, unary(gcol, 0));
    out.phi.components.emplace(1, unary(fcol, 0));
    out.homotopy.emplace(1, unary(hcol, -1));
  }
  auto small_sign = [&](const Tuple& y) {
    long e = static_cast<long>(y.size()) * static_cast<long>(y.size() - 1) / 2;
    for (std::size_t j = 0; j < y.size(); ++j)
      e += static_cast<long>(y.size() - 1 - j) * (t.small.degree(y[j]) - 1);
    return sign_of_parity(e);
  };
  auto p_on_g = [&](const Tuple& y) {
    std::vector<SparseVec> args;
    for (int v : y) args.push_back(gcol[static_cast<std::size_t>(v)]);
    SparseVec pv;
    expand(args, [&](const Tuple& x, const Rational& c) { axpy(pv, c, cache.sp(x)); });
    return scaled(pv, Rational(small_sign(y)));
  };
  for (int n = 2; n <= out.max_arity; ++n) {
    MultiMap nu = ainf_product(n);
    MultiMap psi = ainf_morphism_component(n);
    fill_component(nu, t.small, n, 2 - n, false, opt.filter, [&](const Tuple& y) {
      SparseVec pv = p_on_g(y);
      if (opt.morphisms) {
        SparseVec hv = apply_columns(hhat, pv);
        if (!hv.empty()) psi.add(y, hv);
      }
      return apply_columns(fcol, pv);
    });
    if (opt.morphisms && !psi.empty()) out.psi.components.emplace(n, std::move(psi));
    if (!nu.empty()) out.minimal.products.emplace(n, std::move(nu));
    if (opt.morphisms) {
      MultiMap phi = ainf_morphism_component(n);
      MultiMap hn(n, -n);
      const auto& deg = t.big.degrees();
      for (const auto& x : all_tuples(t.big.dim(), n)) {
        const int d = degree_sum(x, deg);
        if (!t.small.has_degree(d + 1 - n) && !t.big.has_degree(d - n)) continue;
        const SparseVec qv = cache.q(x);
        if (qv.empty()) continue;
        SparseVec fv = apply_columns(fcol, qv), hv = apply_columns(hcol, qv);
        if (!fv.empty()) phi.add(x, fv);
        if (!hv.empty()) hn.add(x, hv);
      }
      if (!phi.empty()) out.phi.components.emplace(n, std::move(phi));
      if (!hn.empty()) out.homotopy.emplace(n, std::move(hn));
    }
  }
  return out;
}

namespace {

long suspension_exponent(const Tuple& x, const std::vector<int>& deg) {
  long e = static_cast<long>(x.size()) * static_cast<long>(x.size() - 1) / 2;
  for (std::size_t j = 0; j < x.size(); ++j)
    e += static_cast<long>(x.size() - 1 - j) * (deg[static_cast<std::size_t>(x[j])] - 1);
  return e;
}

// Koszul sign of sorting a sequence of suspended elements; 0 when a
// repeated element of odd suspended degree forces vanishing.
int symmetric_sort_sign(const Tuple& x, const std::vector<int>& deg) {
  int s = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const int da = deg[static_cast<std::size_t>(x[i])] - 1, db = deg[static_cast<std::size_t>(x[j])] - 1;
      if (x[i] == x[j] && da % 2 != 0) return 0;
      if (x[i] > x[j] && (da * db) % 2 != 0) s = -s;
    }
  return s;
}

// Tree sums on the suspension, where the brackets become graded symmetric
// of degree 1 and the homotopy terms carry no signs.
class TreeKernel {
 public:
  TreeKernel(const TransferDiagram& t, const LInfAlgebra& l) : l_(l), deg_(l.space.degrees()) {
    hcol_ = matrix_columns(QMatrix(-t.h));
  }

  SparseVec P(const Tuple& x) {
    Tuple s = x;
    std::stable_sort(s.begin(), s.end());
    const int sign = symmetric_sort_sign(x, deg_);
    if (sign == 0) return {};
    const SparseVec& v = sorted_P(s);
    return sign > 0 ? v : scaled(v, Rational(-1));
  }

  SparseVec hP(const Tuple& x) {
    if (x.size() == 1) return unit_vector(x[0]);
    return apply_columns(hcol_, P(x));
  }

 private:
  SparseVec bracket(const MultiMap& lk, std::span<const SparseVec> args) {
    SparseVec out;
    expand(args, [&](const Tuple& t, const Rational& c) {
      SparseVec v = lk(t);
      if (v.empty()) return;
      axpy(out, sign_of_parity(suspension_exponent(t, deg_)) > 0 ? c : Rational(-c), v);
    });
    return out;
  }

  const SparseVec& sorted_P(const Tuple& x) {
    auto it = memo_.find(x);
    if (it != memo_.end()) return it->second;
    SparseVec v = compute(x);
    return memo_.emplace(x, std::move(v)).first->second;
  }

  SparseVec compute(const Tuple& x) {
    const int n = static_cast<int>(x.size());
    std::vector<int> sdeg;
    for (int v : x) sdeg.push_back(deg_[static_cast<std::size_t>(v)] - 1);
    SparseVec out;
    for (const auto& part : partitions(n)) {
      const int k = static_cast<int>(part.size());
      if (k < 2) continue;
      const MultiMap* lk = component(l_.brackets, k);
      if (!lk || lk->empty()) continue;
      std::vector<int> image;
      std::vector<SparseVec> args;
      bool zero = false;
      for (const auto& blk : part) {
        Tuple sub;
        for (int i : blk) {
          image.push_back(i);
          sub.push_back(x[static_cast<std::size_t>(i)]);
        }
        SparseVec v = hP(sub);
        if (v.empty()) {
          zero = true;
          break;
        }
        args.push_back(std::move(v));
      }
      if (zero) continue;
      axpy(out, Rational(koszul_sign(Permutation(image), sdeg)), bracket(*lk, args));
    }
    return out;
  }

  const std::vector<std::vector<std::vector<int>>>& partitions(int n) {
    auto it = parts_.find(n);
    if (it == parts_.end()) it = parts_.emplace(n, set_partitions(n)).first;
    return it->second;
  }

  const LInfAlgebra& l_;
  std::vector<int> deg_;
  std::vector<SparseVec> hcol_;
  std::map<Tuple, SparseVec> memo_;
  std::map<int, std::vector<std::vector<std::vector<int>>>> parts_;
};

}  // namespace

LInfAlgebra transfer_linf(const TransferDiagram& t, const LInfAlgebra& big, const TransferOptions& opt) {
  validate(t);
  if (big.space.dim() != t.big.dim()) throw std::invalid_argument("algebra and diagram have different spaces");
  const QMatrix l1 = unary_matrix(big.brackets, big.space.dim(), big.space.dim());
  if (l1 != t.big_d) throw std::invalid_argument("diagram differential differs from the algebra's l_1");
  LInfAlgebra out;
  out.space = t.small;
  const auto gcol = matrix_columns(t.g);
  const auto fcol = matrix_columns(t.f);
  {
    MultiMap l1s = linf_bracket(t.small, 1);
    for (Eigen::Index j = 0; j < t.small_d.cols(); ++j)
      for (Eigen::Index i = 0; i < t.small_d.rows(); ++i)
        if (t.small_d(i, j) != 0) l1s.add({static_cast<int>(j)}, static_cast<int>(i), t.small_d(i, j));
    if (!l1s.empty()) out.brackets.emplace(1, std::move(l1s));
  }
  TreeKernel kernel(t, big);
  const int top = arity_for(opt, t.small);
  for (int n = 2; n <= top; ++n) {
    MultiMap ln = linf_bracket(t.small, n);
    fill_component(ln, t.small, n, 2 - n, true, opt.filter, [&](const Tuple& y) {
      std::vector<SparseVec> args;
      for (int v : y) args.push_back(gcol[static_cast<std::size_t>(v)]);
      SparseVec pv;
      expand(args, [&](const Tuple& x, const Rational& c) { axpy(pv, c, kernel.P(x)); });
      return scaled(apply_columns(fcol, pv), Rational(sign_of_parity(suspension_exponent(y, t.small.degrees()))));
    });
    if (!ln.empty()) out.brackets.emplace(n, std::move(ln));
  }
  return out;
}

std::function<bool(const Tuple&)> algebra_slots_in_degree(const GradedSpace& l_small, int d, int l_dim) {
  return [l_small, d, l_dim](const Tuple& y) {
    int module_slots = 0;
    for (int v : y) {
      if (v >= l_dim)
        ++module_slots;
      else if (l_small.degree(v) != d)
        return false;
    }
    return module_slots <= 1;
  };
}

PairTransfer transfer_pair(const LInfPair& p, const TransferOptions& opt) {
  validate(p);
  const auto& L = p.algebra.space;
  const auto& M = p.module.space;
  PairTransfer out;
  out.algebra_diagram = cohomology_splitting(L, unary_matrix(p.algebra.brackets, L.dim(), L.dim()));
  out.module_diagram = cohomology_splitting(M, unary_matrix(p.module.actions, M.dim(), M.dim()));
  auto joint = pair_to_algebra(p);
  TransferDiagram t = direct_sum(out.algebra_diagram, out.module_diagram, "L.", "M.");
  const int l_small = out.algebra_diagram.small.dim();
  TransferOptions o = opt;
  auto user = opt.filter;
  // Tuples with two module slots vanish on L (+) M.
  o.filter = [user, l_small](const Tuple& y) {
    int module_slots = 0;
    for (int v : y) module_slots += v >= l_small ? 1 : 0;
    if (module_slots > 1) return false;
    return !user || user(y);
  };
  if (o.max_arity <= 0) o.max_arity = default_max_arity(t.small);
  out.max_arity = o.max_arity;
  LInfAlgebra j = transfer_linf(t, joint.algebra, o);
  Splitting s;
  for (int i = 0; i < t.small.dim(); ++i) (i < l_small ? s.algebra_part : s.module_part).push_back(i);
  out.minimal = algebra_to_pair(j, s);
  return out;
}

std::vector<Tuple> weight_violations(const MultiMap& m, const GradedSpace& in, const GradedSpace& out,
                                     const GradedSpace* last) {
  std::vector<Tuple> bad;
  for (const auto& [t, v] : m.entries()) {
    int w = 0;
    for (std::size_t s = 0; s < t.size(); ++s) {
      const GradedSpace& sp = (last && s + 1 == t.size()) ? *last : in;
      w += sp.weight(t[s]).value_or(0);
    }
    for (const auto& [o, c] : v)
      if (out.weight(o).value_or(0) != w) {
        bad.push_back(t);
        break;
      }
  }
  return bad;
}

VanishingBound vanishing_bound(const LInfPair& p) {
  const auto& L = p.algebra.space;
  const auto& M = p.module.space;
  if (!L.weighted() || !M.weighted()) throw std::invalid_argument("vanishing bound needs weight data");
  VanishingBound out;
  for (int i = 0; i < L.dim(); ++i)
    if (L.degree(i) == 1 && L.weight(i).value_or(0) <= 0) out.offenders.push_back(L[i].label);
  out.weights_ok = out.offenders.empty();
  const int top = M.dim() == 0 ? 0 : M.max_degree();
  out.theoretical = 2 * top + 2;
  if (out.weights_ok) out.n0 = out.theoretical;
  out.deligne_range = true;
  for (const GradedSpace* sp : {&L, &M})
    for (int i = 0; i < sp->dim(); ++i) {
      const int w = sp->weight(i).value_or(0), d = sp->degree(i);
      if (w < 0 || w > 2 * d) out.deligne_range = false;
    }
  for (const auto& [n, m] : p.module.actions) {
    out.scanned_arity = std::max(out.scanned_arity, n);
    if (n < 2) continue;
    for (const auto& [t, v] : m.entries()) {
      bool omega = true;
      for (std::size_t s = 0; s + 1 < t.size(); ++s) omega = omega && L.degree(t[s]) == 1;
      if (!omega || v.empty()) continue;
      out.empirical = std::max(out.empirical, n - 1);
      if (out.n0 && n - 1 > *out.n0) {
        std::string e = "m_" + std::to_string(n) + "(";
        for (std::size_t s = 0; s < t.size(); ++s)
          e += (s ? "," : "") + (s + 1 < t.size() ? L[t[s]].label : M[t[s]].label);
        out.violations.push_back(e + ")");
      }
    }
  }
  return out;
}

}  // namespace hse
