#include "hse/resonance.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "hse/parallel.hpp"

namespace hse {

namespace {

Ring coordinate_ring(int b, std::optional<int> trunc) {
  if (b == 0) return Ring::parse("Q");
  std::string vars;
  for (int j = 1; j <= b; ++j) vars += (j > 1 ? "," : "") + std::string("x") + std::to_string(j);
  return Ring::parse("poly(" + vars + (trunc ? ", trunc=" + std::to_string(*trunc) : "") + ")");
}

void require_square_zero(const TwistedComplex& t) {
  if (t.space.dim() == 0) return;
  for (int i = t.space.min_degree(); i < t.space.max_degree(); ++i)
    if (!multiply(t.ring, t.differential(i + 1), t.differential(i)).is_zero())
      throw std::logic_error("universal differential does not square to zero in degree " + std::to_string(i));
}

int s_value(const GradedSpace& m, int i, int k) { return m.dim_in_degree(i) - k + 1; }

void fill_samples(ResonanceResult& out, int count, std::uint64_t seed) {
  if (count <= 0) return;
  const Ring& r = out.universal.complex.ring;
  const auto points = sample_points(r.nvars(), count, seed);
  out.samples.resize(points.size());
  parallel_for(points.size(), [&](std::size_t n) {
    SampleRow row;
    row.point = points[n];
    row.vanishes = std::all_of(out.ideal.gens.begin(), out.ideal.gens.end(),
                               [&](const Poly& g) { return r.eval(g, row.point) == 0; });
    row.cohomology = specialized_cohomology(out.universal, row.point, out.i);
    row.jumps = row.cohomology >= out.k;
    out.samples[n] = std::move(row);
  });
}

}  // namespace

UniversalComplex universal_complex(const LInfPair& p, std::optional<int> n0, std::optional<int> trunc) {
  if (!n0 && !trunc) throw std::invalid_argument("universal complex needs an exact bound n0 or a truncation degree");
  UniversalComplex out;
  out.exact = n0.has_value();
  out.bound = n0 ? *n0 : *trunc;
  if (out.bound < 0) throw std::invalid_argument("negative bound for the universal complex");
  out.h1 = p.algebra.space.in_degree(1);
  const Ring r = coordinate_ring(static_cast<int>(out.h1.size()), n0 ? std::nullopt : trunc);
  for (std::size_t j = 0; j < out.h1.size(); ++j) add_term(r, out.omega, out.h1[j], r.var("x" + std::to_string(j + 1)));
  if (!mc_residual(p.algebra, r, out.omega, out.bound).empty())
    throw std::invalid_argument("omega_univ is not MC: the brackets do not vanish on degree 1");
  out.complex = twisted_complex(p, r, out.omega, out.bound);
  require_square_zero(out.complex);
  return out;
}

std::map<int, QMatrix> specialize(const UniversalComplex& u, std::span<const Rational> point) {
  std::map<int, QMatrix> out;
  for (const auto& [i, m] : u.complex.d) out.emplace(i, evaluate(u.complex.ring, m, point));
  return out;
}

int specialized_cohomology(const UniversalComplex& u, std::span<const Rational> point, int i) {
  const Ring& r = u.complex.ring;
  const auto rk = [&](int deg) { return static_cast<int>(rank(evaluate(r, u.complex.differential(deg), point))); };
  return u.complex.space.dim_in_degree(i) - rk(i) - rk(i - 1);
}

std::vector<std::vector<Rational>> sample_points(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  std::vector<std::vector<Rational>> out;
  for (int n = 0; n < count; ++n) {
    std::vector<Rational> p(static_cast<std::size_t>(dim));
    for (auto& x : p) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool ResonanceResult::samples_consistent() const {
  return std::all_of(samples.begin(), samples.end(), [](const SampleRow& s) { return s.consistent(); });
}

ResonanceResult resonance_ideal(const LInfPair& p, int i, int k, const ResonanceOptions& opt) {
  ResonanceResult out;
  out.i = i;
  out.k = k;
  out.s = s_value(p.module.space, i, k);
  if (opt.exact) {
    SubtorusReport st = subtorus_hypothesis_check(p);
    if (!st.exact_n0) throw std::invalid_argument("exact resonance needs a certified vanishing bound n0");
    out.universal = universal_complex(p, st.exact_n0, std::nullopt);
  } else {
    out.universal = universal_complex(p, std::nullopt, opt.trunc.value_or(std::max(out.s, 1) + 2));
  }
  out.ideal = jump_ideal(out.universal.complex, i, k);
  fill_samples(out, opt.samples, opt.seed);
  return out;
}

UniversalComplex dga_universal_complex(const AInfAlgebra& a) {
  const GradedSpace& s = a.space;
  if (s.dim() == 0 || s.min_degree() < 0 || s.dim_in_degree(0) != 1)
    throw std::invalid_argument("dga resonance needs A^0 = Q and A in degrees >= 0");
  const QMatrix d = unary_matrix(a.products, s.dim(), s.dim());
  const TransferDiagram t = cohomology_splitting(s, d);
  const auto h1 = t.small.in_degree(1);
  LInfPair p = regular_pair(a);
  UniversalComplex out;
  out.exact = true;
  out.bound = std::max(top_arity(p.module.actions), 2) - 1;
  const Ring r = coordinate_ring(static_cast<int>(h1.size()), std::nullopt);
  for (std::size_t j = 0; j < h1.size(); ++j) {
    const Poly x = r.var("x" + std::to_string(j + 1));
    for (int row = 0; row < s.dim(); ++row)
      if (t.g(row, h1[j]) != 0) add_term(r, out.omega, row, r.scale(x, t.g(row, h1[j])));
  }
  if (!mc_residual(p.algebra, r, out.omega, out.bound).empty())
    throw std::invalid_argument("omega_univ is not MC in the dga");
  out.complex = twisted_complex(p, r, out.omega, out.bound);
  require_square_zero(out.complex);
  return out;
}

ResonanceResult dga_resonance_ideal(const AInfAlgebra& a, int i, int k, int samples, std::uint64_t seed) {
  ResonanceResult out;
  out.i = i;
  out.k = k;
  out.universal = dga_universal_complex(a);
  out.s = s_value(a.space, i, k);
  out.ideal = jump_ideal(out.universal.complex, i, k);
  fill_samples(out, samples, seed);
  return out;
}

TangentConeReport tangent_cone_check(const LInfPair& minimal, int i, int k, std::optional<int> trunc) {
  TangentConeReport rep;
  rep.i = i;
  rep.k = k;
  rep.s = s_value(minimal.module.space, i, k);
  rep.trunc = std::max({trunc.value_or(rep.s), rep.s, 1});
  UniversalComplex full = universal_complex(minimal, std::nullopt, rep.trunc);
  const Ring& r = full.complex.ring;
  rep.ring = r.descriptor();
  TwistedComplex lin = twisted_complex(minimal, r, full.omega, 1);
  const RingMatrix a = block_diagonal(full.complex.differential(i - 1), full.complex.differential(i));
  const RingMatrix b = block_diagonal(lin.differential(i - 1), lin.differential(i));
  if (rep.s <= 0) {
    rep.linear_ideal = rep.initial_forms = unit_ideal(r);
    return rep;
  }
  if (rep.s > std::min(a.rows, a.cols)) return rep;
  const auto fa = all_minors(r, a, rep.s), fb = all_minors(r, b, rep.s);
  rep.minors = fa.size();
  std::vector<Poly> lg, ig;
  std::vector<std::string> tags;
  for (std::size_t n = 0; n < fa.size(); ++n) {
    const Poly top = homogeneous_part(fa[n].value, rep.s);
    const std::string tag = "rows" + mask_text(fa[n].rows) + " cols" + mask_text(fa[n].cols);
    if (!fb[n].value.is_zero()) ++rep.nonzero_linear;
    if (top != fb[n].value) rep.mismatches.push_back(tag);
    lg.push_back(fb[n].value);
    ig.push_back(top);
    tags.push_back(tag);
  }
  rep.linear_ideal = make_ideal(r, lg, tags);
  rep.initial_forms = make_ideal(r, ig, tags);
  return rep;
}

TangentConeReport tangent_cone_check(const AInfAlgebra& a, int i, int k, std::optional<int> trunc) {
  LInfPair p = regular_pair(a);
  const TransferDiagram lt = cohomology_splitting(p.algebra.space, unary_matrix(p.algebra.brackets, a.space.dim(), a.space.dim()));
  const TransferDiagram mt = cohomology_splitting(p.module.space, unary_matrix(p.module.actions, a.space.dim(), a.space.dim()));
  const int s = s_value(mt.small, i, k);
  const int d = std::max({trunc.value_or(s), s, 1});
  TransferOptions opt{d + 1, algebra_slots_in_degree(lt.small, 1, lt.small.dim()), false};
  return tangent_cone_check(transfer_pair(p, opt).minimal, i, k, d);
}

SubtorusReport subtorus_hypothesis_check(const LInfPair& p) {
  SubtorusReport rep;
  rep.bound = vanishing_bound(p);
  rep.certified = rep.bound.weights_ok && rep.bound.n0 && rep.bound.violations.empty();
  if (rep.certified) rep.exact_n0 = rep.bound.n0;
  return rep;
}

}  // namespace hse
