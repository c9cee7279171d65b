#include "hse/graded_space.hpp"

#include <stdexcept>

namespace hse {

GradedSpace::GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& b = basis_[i];
    if (b.label.empty()) throw std::invalid_argument("empty basis label");
    if (!by_label_.emplace(b.label, static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate basis label '" + b.label + "'");
    if (i == 0)
      weighted_ = b.weight.has_value();
    else if (weighted_ != b.weight.has_value())
      throw std::invalid_argument("weights must be given for all basis elements or none");
    degrees_.push_back(b.deg);
    by_degree_[b.deg].push_back(static_cast<int>(i));
  }
}

std::optional<int> GradedSpace::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

int GradedSpace::index(std::string_view label) const {
  auto i = find(label);
  if (!i) throw std::invalid_argument("unknown basis label '" + std::string(label) + "'");
  return *i;
}

std::vector<int> GradedSpace::in_degree(int d) const {
  auto it = by_degree_.find(d);
  return it == by_degree_.end() ? std::vector<int>{} : it->second;
}

int GradedSpace::dim_in_degree(int d) const {
  auto it = by_degree_.find(d);
  return it == by_degree_.end() ? 0 : static_cast<int>(it->second.size());
}

int GradedSpace::min_degree() const { return by_degree_.empty() ? 0 : by_degree_.begin()->first; }
int GradedSpace::max_degree() const { return by_degree_.empty() ? 0 : by_degree_.rbegin()->first; }

GradedSpace GradedSpace::direct_sum(const GradedSpace& a, const GradedSpace& b, std::string_view prefix_a,
                                    std::string_view prefix_b) {
  std::vector<BasisElement> out;
  for (auto e : a.basis()) {
    e.label = std::string(prefix_a) + e.label;
    out.push_back(e);
  }
  for (auto e : b.basis()) {
    e.label = std::string(prefix_b) + e.label;
    out.push_back(e);
  }
  return GradedSpace(std::move(out));
}

void add_term(SparseVec& v, int index, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = v.try_emplace(index, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

void axpy(SparseVec& acc, const Rational& c, const SparseVec& v) {
  if (c == 0) return;
  for (const auto& [i, x] : v) add_term(acc, i, c * x);
}

SparseVec scaled(const SparseVec& v, const Rational& c) {
  SparseVec out;
  if (c == 0) return out;
  for (const auto& [i, x] : v) out.emplace(i, c * x);
  return out;
}

bool is_zero(const SparseVec& v) { return v.empty(); }

SparseVec unit_vector(int index) { return SparseVec{{index, Rational(1)}}; }

}  // namespace hse
