#include <stdexcept>

#include "hse/permutation.hpp"
#include "hse/structures.hpp"

namespace hse {

namespace {

struct PartIndex {
  std::vector<int> local;        ///< J index -> index inside its part
  std::vector<char> in_module;   ///< J index -> belongs to M
};

PartIndex index_parts(int dim, const Splitting& s) {
  PartIndex p{std::vector<int>(static_cast<std::size_t>(dim), -1), std::vector<char>(static_cast<std::size_t>(dim), 0)};
  for (std::size_t k = 0; k < s.algebra_part.size(); ++k) p.local[static_cast<std::size_t>(s.algebra_part[k])] = static_cast<int>(k);
  for (std::size_t k = 0; k < s.module_part.size(); ++k) {
    auto j = static_cast<std::size_t>(s.module_part[k]);
    if (p.local[j] != -1) throw std::invalid_argument("splitting parts overlap");
    p.local[j] = static_cast<int>(k);
    p.in_module[j] = 1;
  }
  for (int v : p.local)
    if (v == -1) throw std::invalid_argument("splitting does not cover the basis");
  return p;
}

GradedSpace part_space(const GradedSpace& j, const std::vector<int>& part, const std::string& prefix) {
  bool strip = true;
  for (int i : part)
    if (j[i].label.rfind(prefix, 0) != 0) strip = false;
  std::vector<BasisElement> b;
  for (int i : part) {
    BasisElement e = j[i];
    if (strip) e.label = e.label.substr(prefix.size());
    b.push_back(e);
  }
  return GradedSpace(std::move(b));
}

/// Sign relating a value with the module input at position i to the value
/// with the module input moved last.
int move_last_sign(const std::vector<int>& degs, std::size_t i) {
  int e = 0;
  for (std::size_t k = i + 1; k < degs.size(); ++k) e += 1 + degs[i] * degs[k];
  return sign_of_parity(e);
}

/// Shared split of an antisymmetric family on L (+) M into the no-module
/// part (outputs in the algebra target) and the one-module part (outputs in
/// the module target), module input moved last.
template <class AddAlg, class AddMod>
void split_family(const MapFamily& fam, const GradedSpace& jspace, const PartIndex& src, const PartIndex& dst,
                  const std::string& what, AddAlg add_alg, AddMod add_mod) {
  const auto& deg = jspace.degrees();
  for (const auto& [n, m] : fam) {
    for (const auto& [t, v] : m.entries()) {
      std::vector<std::size_t> mods;
      for (std::size_t s = 0; s < t.size(); ++s)
        if (src.in_module[static_cast<std::size_t>(t[s])]) mods.push_back(s);
      if (mods.size() >= 2)
        throw std::invalid_argument(what + "_" + std::to_string(n) + " is nonzero on two module inputs");
      bool want_module = mods.size() == 1;
      for (const auto& [o, c] : v)
        if (static_cast<bool>(dst.in_module[static_cast<std::size_t>(o)]) != want_module)
          throw std::invalid_argument(what + "_" + std::to_string(n) + " does not respect the splitting");
      Tuple local;
      std::vector<int> degs;
      for (std::size_t s = 0; s < t.size(); ++s) {
        if (want_module && s == mods[0]) continue;
        local.push_back(src.local[static_cast<std::size_t>(t[s])]);
      }
      for (int x : t) degs.push_back(deg[static_cast<std::size_t>(x)]);
      SparseVec out;
      for (const auto& [o, c] : v) add_term(out, dst.local[static_cast<std::size_t>(o)], c);
      if (!want_module) {
        add_alg(n, local, out);
      } else {
        local.push_back(src.local[static_cast<std::size_t>(t[mods[0]])]);
        add_mod(n, local, scaled(out, Rational(move_last_sign(degs, mods[0]))));
      }
    }
  }
}

}  // namespace

PairAlgebra pair_to_algebra(const LInfPair& p) {
  PairAlgebra out;
  const int nl = p.algebra.space.dim();
  out.algebra.space = GradedSpace::direct_sum(p.algebra.space, p.module.space, "L.", "M.");
  for (int i = 0; i < nl; ++i) out.splitting.algebra_part.push_back(i);
  for (int i = 0; i < p.module.space.dim(); ++i) out.splitting.module_part.push_back(nl + i);
  auto& fam = out.algebra.brackets;
  auto slot = [&](int n) -> MultiMap& {
    auto it = fam.find(n);
    if (it == fam.end()) it = fam.emplace(n, linf_bracket(out.algebra.space, n)).first;
    return it->second;
  };
  for (const auto& [n, l] : p.algebra.brackets) {
    MultiMap& j = slot(n);
    for (const auto& [t, v] : l.entries()) j.add(t, v);
  }
  for (const auto& [n, m] : p.module.actions) {
    MultiMap& j = slot(n);
    for (const auto& [t, v] : m.entries()) {
      Tuple jt = t;
      jt.back() += nl;
      SparseVec w;
      for (const auto& [o, c] : v) w.emplace(o + nl, c);
      j.add(jt, w);
    }
  }
  return out;
}

LInfPair algebra_to_pair(const LInfAlgebra& j, const Splitting& s) {
  PartIndex parts = index_parts(j.space.dim(), s);
  LInfPair p;
  p.algebra.space = part_space(j.space, s.algebra_part, "L.");
  p.module.space = part_space(j.space, s.module_part, "M.");
  split_family(
      j.brackets, j.space, parts, parts, "j",
      [&](int n, const Tuple& t, const SparseVec& v) {
        auto it = p.algebra.brackets.find(n);
        if (it == p.algebra.brackets.end()) it = p.algebra.brackets.emplace(n, linf_bracket(p.algebra.space, n)).first;
        it->second.add(t, v);
      },
      [&](int n, const Tuple& t, const SparseVec& v) {
        auto it = p.module.actions.find(n);
        if (it == p.module.actions.end()) it = p.module.actions.emplace(n, module_action(p.algebra.space, n)).first;
        it->second.add(t, v);
      });
  for (const auto& [n, m] : j.brackets) {
    p.algebra.brackets.try_emplace(n, linf_bracket(p.algebra.space, n));
    p.module.actions.try_emplace(n, module_action(p.algebra.space, n));
  }
  return p;
}

LInfModule algebra_to_module(const LInfAlgebra& j, const Splitting& s) { return algebra_to_pair(j, s).module; }

InfMorphism morphism_pair_to_algebra(const PairMorphism& fg, const LInfPair& src, const LInfPair& dst) {
  const int nl = src.algebra.space.dim();
  const int nl2 = dst.algebra.space.dim();
  GradedSpace jsrc = GradedSpace::direct_sum(src.algebra.space, src.module.space, "L.", "M.");
  InfMorphism out{MorphismKind::linf, {}};
  auto slot = [&](int n) -> MultiMap& {
    auto it = out.components.find(n);
    if (it == out.components.end()) it = out.components.emplace(n, linf_morphism_component(jsrc, n)).first;
    return it->second;
  };
  for (const auto& [n, f] : fg.algebra.components) {
    MultiMap& c = slot(n);
    for (const auto& [t, v] : f.entries()) c.add(t, v);
  }
  for (const auto& [n, g] : fg.module.components) {
    MultiMap& c = slot(n);
    for (const auto& [t, v] : g.entries()) {
      Tuple jt = t;
      jt.back() += nl;
      SparseVec w;
      for (const auto& [o, x] : v) w.emplace(o + nl2, x);
      c.add(jt, w);
    }
  }
  return out;
}

PairMorphism split_pair_morphism(const InfMorphism& f, const PairAlgebra& src, const PairAlgebra& dst) {
  PartIndex sp = index_parts(src.algebra.space.dim(), src.splitting);
  PartIndex dp = index_parts(dst.algebra.space.dim(), dst.splitting);
  GradedSpace lsrc = part_space(src.algebra.space, src.splitting.algebra_part, "L.");
  PairMorphism out{{MorphismKind::linf, {}}, {MorphismKind::module, {}}};
  split_family(
      f.components, src.algebra.space, sp, dp, "F",
      [&](int n, const Tuple& t, const SparseVec& v) {
        auto it = out.algebra.components.find(n);
        if (it == out.algebra.components.end())
          it = out.algebra.components.emplace(n, linf_morphism_component(lsrc, n)).first;
        it->second.add(t, v);
      },
      [&](int n, const Tuple& t, const SparseVec& v) {
        auto it = out.module.components.find(n);
        if (it == out.module.components.end())
          it = out.module.components.emplace(n, module_morphism_component(lsrc, n)).first;
        it->second.add(t, v);
      });
  return out;
}

}  // namespace hse
