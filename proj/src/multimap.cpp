#include "hse/multimap.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "hse/permutation.hpp"

namespace hse {

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::none: return "none";
    case Symmetry::antisymmetric: return "antisymmetric";
    case Symmetry::algebra_slots: return "algebra_slots";
  }
  return "none";
}

Symmetry parse_symmetry(const std::string& s) {
  if (s == "none") return Symmetry::none;
  if (s == "antisymmetric") return Symmetry::antisymmetric;
  if (s == "algebra_slots") return Symmetry::algebra_slots;
  throw std::invalid_argument("unknown symmetry '" + s + "'");
}

MultiMap::MultiMap(int arity, int shift, Symmetry sym, std::vector<int> slot_degrees)
    : arity_(arity), shift_(shift), sym_(sym), slot_degrees_(std::move(slot_degrees)) {
  if (arity < 1) throw std::invalid_argument("arity must be positive");
  if (sym != Symmetry::none && slot_degrees_.empty())
    throw std::invalid_argument("symmetric map needs slot degrees");
}

int MultiMap::canonicalize(const Tuple& in, Tuple& canonical) const {
  if (static_cast<int>(in.size()) != arity_)
    throw std::invalid_argument("arity mismatch: expected " + std::to_string(arity_) + " inputs, got " +
                                std::to_string(in.size()));
  canonical = in;
  if (sym_ == Symmetry::none) return 1;
  std::size_t k = sym_ == Symmetry::antisymmetric ? in.size() : in.size() - 1;
  std::span<const int> perm_part(in.data(), k);
  for (int v : perm_part)
    if (v < 0 || v >= static_cast<int>(slot_degrees_.size())) throw std::out_of_range("basis index out of range");
  int s = sort_sign(perm_part, slot_degrees_);
  if (s == 0) return 0;
  std::sort(canonical.begin(), canonical.begin() + static_cast<long>(k));
  return s;
}

void MultiMap::add(const Tuple& in, int out, const Rational& c) {
  if (c == 0) return;
  Tuple can;
  int s = canonicalize(in, can);
  if (s == 0) throw std::invalid_argument("nonzero value on a tuple forced to vanish by antisymmetry");
  auto& v = table_[can];
  add_term(v, out, s == 1 ? c : Rational(-c));
  if (v.empty()) table_.erase(can);
}

void MultiMap::add(const Tuple& in, const SparseVec& v) {
  for (const auto& [i, c] : v) add(in, i, c);
}

SparseVec MultiMap::operator()(const Tuple& in) const {
  Tuple can;
  int s = canonicalize(in, can);
  if (s == 0) return {};
  auto it = table_.find(can);
  if (it == table_.end()) return {};
  return s == 1 ? it->second : scaled(it->second, Rational(-1));
}

SparseVec eval_map(const MultiMap& m, std::span<const SparseVec> args) {
  if (static_cast<int>(args.size()) != m.arity()) throw std::invalid_argument("apply: arity mismatch");
  SparseVec out;
  for (const auto& a : args)
    if (a.empty()) return out;
  Tuple t(args.size());
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t pos, const Rational& c) {
    if (pos == args.size()) {
      axpy(out, c, m(t));
      return;
    }
    for (const auto& [i, x] : args[pos]) {
      t[pos] = i;
      rec(pos + 1, c * x);
    }
  };
  rec(0, Rational(1));
  return out;
}

int tensor_koszul_sign(std::span<const int> map_degrees, std::span<const int> block_input_degrees) {
  long before = 0, e = 0;
  for (std::size_t s = 0; s < map_degrees.size(); ++s) {
    e += static_cast<long>(map_degrees[s]) * before;
    before += block_input_degrees[s];
  }
  return sign_of_parity(e);
}

std::vector<Tuple> all_tuples(int dim, int n) {
  std::vector<Tuple> out;
  if (dim <= 0) return out;
  Tuple t(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(t);
    int p = n - 1;
    while (p >= 0 && ++t[static_cast<std::size_t>(p)] == dim) t[static_cast<std::size_t>(p--)] = 0;
    if (p < 0) break;
  }
  return out;
}

std::vector<Tuple> sorted_tuples(int dim, int n) {
  std::vector<Tuple> out;
  if (dim <= 0) return out;
  Tuple t(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(t);
    int p = n - 1;
    while (p >= 0 && t[static_cast<std::size_t>(p)] == dim - 1) --p;
    if (p < 0) break;
    int v = ++t[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < n; ++q) t[static_cast<std::size_t>(q)] = v;
  }
  return out;
}

int degree_sum(const Tuple& t, std::span<const int> deg) {
  int s = 0;
  for (int i : t) s += deg[static_cast<std::size_t>(i)];
  return s;
}

MultiMap compose_multimaps(const MultiMap& outer, const MultiMap& inner, int slot, const GradedSpace& space) {
  if (slot < 0 || slot >= outer.arity()) throw std::invalid_argument("slot out of range");
  const int n = outer.arity() + inner.arity() - 1;
  MultiMap out(n, outer.shift() + inner.shift());
  const auto& deg = space.degrees();
  for (const auto& t : all_tuples(space.dim(), n)) {
    Tuple in_t(t.begin() + slot, t.begin() + slot + inner.arity());
    SparseVec iv = inner(in_t);
    if (iv.empty()) continue;
    int before = 0;
    for (int s = 0; s < slot; ++s) before += deg[static_cast<std::size_t>(t[static_cast<std::size_t>(s)])];
    Rational sign = sign_of_parity(static_cast<long>(inner.shift()) * before);
    std::vector<SparseVec> args;
    for (int s = 0; s < slot; ++s) args.push_back(unit_vector(t[static_cast<std::size_t>(s)]));
    args.push_back(iv);
    for (int s = slot + inner.arity(); s < n; ++s) args.push_back(unit_vector(t[static_cast<std::size_t>(s)]));
    SparseVec v = eval_map(outer, args);
    for (const auto& [i, c] : v) out.add(t, i, sign * c);
  }
  return out;
}

}  // namespace hse
