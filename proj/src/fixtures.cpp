#include "hse/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace hse {

namespace {

using Mono = std::vector<int>;  // sorted generator indices

/// Product of exterior monomials of odd generators: the sign of merging, 0
/// on overlap.
int merge_sign(const Mono& a, const Mono& b, Mono& out) {
  out.clear();
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  if (out.size() != a.size() + b.size()) return 0;
  int inv = 0;
  for (int x : a)
    for (int y : b)
      if (x > y) ++inv;
  return inv % 2 ? -1 : 1;
}

int inversion_sign(const std::vector<int>& m) {
  int inv = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m[i] > m[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

AInfAlgebra exterior_cdga(const std::vector<ExteriorGenerator>& gens) {
  const int g = static_cast<int>(gens.size());
  if (g > 12) throw std::invalid_argument("too many generators");
  bool weighted = !gens.empty() && gens[0].weight.has_value();
  for (const auto& x : gens) {
    if (x.deg % 2 == 0) throw std::invalid_argument("exterior generators must have odd degree");
    if (x.weight.has_value() != weighted) throw std::invalid_argument("weights must be given for all generators");
  }
  std::vector<Mono> monos;
  for (int mask = 0; mask < (1 << g); ++mask) {
    Mono m;
    for (int i = 0; i < g; ++i)
      if (mask & (1 << i)) m.push_back(i);
    monos.push_back(m);
  }
  auto mdeg = [&](const Mono& m) {
    int d = 0;
    for (int i : m) d += gens[static_cast<std::size_t>(i)].deg;
    return d;
  };
  auto mweight = [&](const Mono& m) {
    int w = 0;
    for (int i : m) w += *gens[static_cast<std::size_t>(i)].weight;
    return w;
  };
  std::stable_sort(monos.begin(), monos.end(), [&](const Mono& a, const Mono& b) {
    if (mdeg(a) != mdeg(b)) return mdeg(a) < mdeg(b);
    if (weighted && mweight(a) != mweight(b)) return mweight(a) < mweight(b);
    return a < b;
  });
  std::map<Mono, int> index;
  std::vector<BasisElement> basis;
  for (const auto& m : monos) {
    std::string label;
    for (int i : m) label += gens[static_cast<std::size_t>(i)].name;
    if (label.empty()) label = "1";
    index[m] = static_cast<int>(basis.size());
    basis.push_back({label, mdeg(m), weighted ? std::optional<int>(mweight(m)) : std::nullopt});
  }
  AInfAlgebra a{GradedSpace(basis), {}};
  MultiMap mu2 = ainf_product(2);
  Mono prod;
  for (const auto& x : monos)
    for (const auto& y : monos) {
      int s = merge_sign(x, y, prod);
      if (s != 0) mu2.add({index[x], index[y]}, index[prod], Rational(s));
    }
  // d on generators, extended as a derivation.
  std::vector<SparseVec> dgen(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i)
    for (const auto& [m, c] : gens[static_cast<std::size_t>(i)].d) {
      Mono s = m;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) continue;
      int sign = inversion_sign(m);
      if (mdeg(s) != gens[static_cast<std::size_t>(i)].deg + 1)
        throw std::invalid_argument("differential of " + gens[static_cast<std::size_t>(i)].name + " is not of degree +1");
      if (weighted && mweight(s) != *gens[static_cast<std::size_t>(i)].weight)
        throw std::invalid_argument("differential of " + gens[static_cast<std::size_t>(i)].name + " is not weight-preserving");
      add_term(dgen[static_cast<std::size_t>(i)], index[s], c * sign);
    }
  MultiMap mu1 = ainf_product(1);
  for (const auto& m : monos) {
    SparseVec out;
    int before = 0;
    for (std::size_t s = 0; s < m.size(); ++s) {
      Mono left(m.begin(), m.begin() + static_cast<long>(s)), right(m.begin() + static_cast<long>(s) + 1, m.end());
      SparseVec v = eval_map(mu2, std::vector<SparseVec>{unit_vector(index[left]), dgen[static_cast<std::size_t>(m[s])]});
      v = eval_map(mu2, std::vector<SparseVec>{v, unit_vector(index[right])});
      axpy(out, Rational(sign_of_parity(before)), v);
      before += gens[static_cast<std::size_t>(m[s])].deg;
    }
    mu1.add({index[m]}, out);
  }
  for (const auto& [t, v] : mu1.entries()) {
    SparseVec dd;
    for (const auto& [i, c] : v) axpy(dd, c, mu1({i}));
    if (!dd.empty()) throw std::invalid_argument("differential does not square to zero");
  }
  if (!mu1.empty()) a.products.emplace(1, std::move(mu1));
  a.products.emplace(2, std::move(mu2));
  return a;
}

AInfAlgebra exterior_algebra(int n, bool weighted) {
  std::vector<ExteriorGenerator> gens;
  for (int i = 1; i <= n; ++i)
    gens.push_back({n <= 3 ? std::string(1, "xyz"[i - 1]) : "e" + std::to_string(i), 1,
                    weighted ? std::optional<int>(1) : std::nullopt, {}});
  return exterior_cdga(gens);
}

AInfAlgebra torus2(bool weighted) { return exterior_algebra(2, weighted); }

AInfAlgebra heisenberg(bool weighted) {
  auto w = [&](int v) { return weighted ? std::optional<int>(v) : std::nullopt; };
  return exterior_cdga({{"x", 1, w(1), {}}, {"y", 1, w(1), {}}, {"z", 1, w(2), {{{0, 1}, Rational(1)}}}});
}

AInfAlgebra weight_zero_circle() { return exterior_cdga({{"x", 1, 0, {}}}); }

AInfAlgebra free_odd_truncated(int top) {
  if (top < 0) throw std::invalid_argument("negative truncation");
  std::vector<BasisElement> b;
  for (int k = 0; k <= top; ++k) b.push_back({k == 0 ? "1" : (k == 1 ? "a" : "a" + std::to_string(k)), k, std::nullopt});
  AInfAlgebra a{GradedSpace(b), {}};
  MultiMap mu2 = ainf_product(2);
  for (int i = 0; i <= top; ++i)
    for (int j = 0; i + j <= top; ++j) mu2.add({i, j}, i + j, Rational(1));
  a.products.emplace(2, std::move(mu2));
  return a;
}

AInfAlgebra endomorphism_dga(const std::vector<int>& degrees, const QMatrix& delta) {
  const int n = static_cast<int>(degrees.size());
  if (delta.rows() != n || delta.cols() != n) throw std::invalid_argument("differential has the wrong size");
  if (!is_zero_matrix(QMatrix(delta * delta))) throw std::invalid_argument("differential does not square to zero");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (delta(i, j) != 0 && degrees[static_cast<std::size_t>(i)] != degrees[static_cast<std::size_t>(j)] + 1)
        throw std::invalid_argument("differential is not of degree one");
  auto id = [n](int i, int j) { return i * n + j; };
  std::vector<BasisElement> b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b.push_back({"E" + std::to_string(i) + "_" + std::to_string(j),
                   degrees[static_cast<std::size_t>(i)] - degrees[static_cast<std::size_t>(j)], std::nullopt});
  AInfAlgebra a{GradedSpace(b), {}};
  MultiMap mu1 = ainf_product(1), mu2 = ainf_product(2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) mu2.add({id(i, j), id(j, k)}, id(i, k), Rational(1));
      // d(E_ij) = delta E_ij - (-1)^{|E_ij|} E_ij delta
      const int sign = (degrees[static_cast<std::size_t>(i)] - degrees[static_cast<std::size_t>(j)]) % 2 == 0 ? -1 : 1;
      for (int k = 0; k < n; ++k) {
        if (delta(k, i) != 0) mu1.add({id(i, j)}, id(k, j), delta(k, i));
        if (delta(j, k) != 0) mu1.add({id(i, j)}, id(i, k), Rational(sign) * delta(j, k));
      }
    }
  if (!mu1.empty()) a.products.emplace(1, std::move(mu1));
  a.products.emplace(2, std::move(mu2));
  return a;
}

LInfAlgebra heisenberg_lie() {
  LInfAlgebra l{GradedSpace({{"X", 0, std::nullopt}, {"Y", 0, std::nullopt}, {"Z", 0, std::nullopt}}), {}};
  MultiMap l2 = linf_bracket(l.space, 2);
  l2.add({0, 1}, 2, Rational(1));
  l.brackets.emplace(2, std::move(l2));
  return l;
}

AInfAlgebra change_of_basis(const AInfAlgebra& a, const QMatrix& p) {
  const int n = a.space.dim();
  if (p.rows() != n || p.cols() != n) throw std::invalid_argument("basis change has the wrong size");
  QMatrix pinv = inverse(p);
  std::vector<SparseVec> col(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (p(i, j) != 0) col[static_cast<std::size_t>(j)].emplace(i, p(i, j));
  for (int j = 0; j < n; ++j)
    for (const auto& [i, c] : col[static_cast<std::size_t>(j)])
      if (a.space.degree(i) != a.space.degree(j) || a.space.weight(i) != a.space.weight(j))
        throw std::invalid_argument("basis change mixes degrees or weights");
  AInfAlgebra out{a.space, {}};
  for (const auto& [k, m] : a.products) {
    MultiMap nm = ainf_product(k);
    for (const auto& t : all_tuples(n, k)) {
      std::vector<SparseVec> args;
      for (int i : t) args.push_back(col[static_cast<std::size_t>(i)]);
      SparseVec v = eval_map(m, args);
      if (v.empty()) continue;
      SparseVec w;
      for (const auto& [i, c] : v)
        for (int r = 0; r < n; ++r)
          if (pinv(r, i) != 0) add_term(w, r, pinv(r, i) * c);
      nm.add(t, w);
    }
    out.products.emplace(k, std::move(nm));
  }
  return out;
}

AInfAlgebra random_change_of_basis(const AInfAlgebra& a, std::mt19937_64& rng, bool keep_degree_zero) {
  const int n = a.space.dim();
  QMatrix p = QMatrix::Identity(n, n);
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) blocks[{a.space.degree(i), a.space.weight(i).value_or(0)}].push_back(i);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (const auto& [key, idx] : blocks) {
    if (keep_degree_zero && key.first == 0) continue;
    const auto k = static_cast<Eigen::Index>(idx.size());
    QMatrix b(k, k);
    do {
      for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c) b(r, c) = coef(rng);
    } while (rank(b) < k);
    for (Eigen::Index r = 0; r < k; ++r)
      for (Eigen::Index c = 0; c < k; ++c) p(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]) = b(r, c);
  }
  AInfAlgebra out = change_of_basis(a, p);
  std::vector<BasisElement> relabeled;
  std::map<int, int> count;
  for (int i = 0; i < n; ++i) {
    BasisElement e = a.space[i];
    if (!(keep_degree_zero && e.deg == 0)) e.label = "v" + std::to_string(e.deg) + "_" + std::to_string(count[e.deg]++);
    relabeled.push_back(e);
  }
  out.space = GradedSpace(relabeled);
  return out;
}

namespace {

struct Word {
  std::vector<int> letters;
  int deg = 0;
};

}  // namespace

AInfAlgebra random_dga(std::uint64_t seed, const std::vector<int>& dims) {
  if (dims.empty() || dims[0] < 1) throw std::invalid_argument("unsatisfiable dims: degree 0 needs the unit");
  int total = 0;
  for (int d : dims) {
    if (d < 0) throw std::invalid_argument("unsatisfiable dims: negative dimension");
    total += d;
  }
  if (total > 64) throw std::invalid_argument("unsatisfiable dims: total dimension above 64");
  std::mt19937_64 rng(seed);
  std::vector<int> gen_deg;
  std::vector<std::vector<int>> words{{}};  // words[0] is the unit
  std::set<std::vector<int>> in_set{{}};
  auto word_deg = [&](const std::vector<int>& w) {
    int d = 0;
    for (int g : w) d += gen_deg[static_cast<std::size_t>(g)];
    return d;
  };
  for (int k = 1; k < dims[0]; ++k) {
    gen_deg.push_back(0);
    words.push_back({static_cast<int>(gen_deg.size()) - 1});
    in_set.insert(words.back());
  }
  for (std::size_t d = 1; d < dims.size(); ++d) {
    int need = dims[d];
    for (int len = 2; need > 0 && len <= 6; ++len) {
      std::vector<std::vector<int>> cand;
      for (const auto& w : words) {
        if (static_cast<int>(w.size()) != len - 1) continue;
        for (int g = 0; g < static_cast<int>(gen_deg.size()); ++g) {
          std::vector<int> c = w;
          c.push_back(g);
          if (word_deg(c) != static_cast<int>(d) || in_set.count(c)) continue;
          if (!in_set.count(std::vector<int>(c.begin() + 1, c.end()))) continue;
          cand.push_back(c);
        }
      }
      std::shuffle(cand.begin(), cand.end(), rng);
      for (const auto& c : cand) {
        if (need == 0) break;
        if (rng() % 3 == 0) continue;
        words.push_back(c);
        in_set.insert(c);
        --need;
      }
    }
    for (; need > 0; --need) {
      gen_deg.push_back(static_cast<int>(d));
      words.push_back({static_cast<int>(gen_deg.size()) - 1});
      in_set.insert(words.back());
    }
  }
  std::stable_sort(words.begin(), words.end(), [&](const auto& a, const auto& b) { return word_deg(a) < word_deg(b); });
  std::map<std::vector<int>, int> index;
  std::vector<BasisElement> basis;
  for (const auto& w : words) {
    std::string label = w.empty() ? "1" : "";
    for (int g : w) label += (label.empty() ? "" : ".") + std::string("g") + std::to_string(g);
    index[w] = static_cast<int>(basis.size());
    basis.push_back({label, word_deg(w), std::nullopt});
  }
  AInfAlgebra a{GradedSpace(basis), {}};
  MultiMap mu2 = ainf_product(2);
  for (const auto& u : words)
    for (const auto& v : words) {
      std::vector<int> c = u;
      c.insert(c.end(), v.begin(), v.end());
      auto it = index.find(c);
      if (it != index.end()) mu2.add({index[u], index[v]}, it->second, Rational(1));
    }
  // Inner differential [D, -] with D odd of degree 1 and D^2 = 0.
  auto one = a.space.in_degree(1);
  std::shuffle(one.begin(), one.end(), rng);
  SparseVec dvec;
  std::uniform_int_distribution<int> coef(1, 2);
  for (int w : one) {
    SparseVec trial = dvec;
    add_term(trial, w, Rational(rng() % 2 ? coef(rng) : -coef(rng)));
    if (eval_map(mu2, std::vector<SparseVec>{trial, trial}).empty()) dvec = trial;
  }
  MultiMap mu1 = ainf_product(1);
  for (int i = 0; i < a.space.dim(); ++i) {
    SparseVec left = eval_map(mu2, std::vector<SparseVec>{dvec, unit_vector(i)});
    SparseVec right = eval_map(mu2, std::vector<SparseVec>{unit_vector(i), dvec});
    axpy(left, Rational(-sign_of_parity(a.space.degree(i))), right);
    mu1.add({i}, left);
  }
  if (!mu1.empty()) a.products.emplace(1, std::move(mu1));
  a.products.emplace(2, std::move(mu2));
  return random_change_of_basis(a, rng, false);
}

AInfAlgebra random_cdga(std::uint64_t seed, int max_dim, bool weighted) {
  std::mt19937_64 rng(seed);
  int max_gens = 0;
  while ((2 << max_gens) <= max_dim) ++max_gens;
  if (max_gens < 1) throw std::invalid_argument("max_dim too small");
  std::vector<ExteriorGenerator> gens;
  auto w = [&](int v) { return weighted ? std::optional<int>(v) : std::nullopt; };
  int a = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(3, max_gens)));
  for (int i = 0; i < a; ++i) gens.push_back({"x" + std::to_string(i + 1), 1, w(1), {}});
  int room = max_gens - a;
  int pairs = a * (a - 1) / 2;
  int b = room > 0 && pairs > 0 ? static_cast<int>(rng() % static_cast<unsigned>(std::min(room, pairs) + 1)) : 0;
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int k = 0; k < b; ++k) {
    ExteriorGenerator z{"z" + std::to_string(k + 1), 1, w(2), {}};
    for (int i = 0; i < a; ++i)
      for (int j = i + 1; j < a; ++j) {
        int c = coef(rng);
        if (c != 0) z.d.push_back({{i, j}, Rational(c)});
      }
    if (z.d.empty()) z.d.push_back({{0, 1}, Rational(1)});
    gens.push_back(z);
  }
  room -= b;
  if (room > 0 && rng() % 2 == 0) gens.push_back({"u", 3, w(3), {}});
  AInfAlgebra base = exterior_cdga(gens);
  return random_change_of_basis(base, rng, true);
}

}  // namespace hse
