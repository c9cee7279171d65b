#include "hse/ideal.hpp"

#include <algorithm>
#include <stdexcept>

namespace hse {

std::string to_string(Truth t) {
  switch (t) {
    case Truth::no:
      return "no";
    case Truth::yes:
      return "yes";
    case Truth::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

// Scales so that the leading (grlex-largest) coefficient is 1.
Poly normalized(const Ring& r, const Poly& p) {
  if (p.is_zero()) return p;
  return r.scale(p, Rational(1) / p.terms.rbegin()->second);
}

bool all_truncated(const Ring& r) {
  const auto& t = r.spec().truncated;
  return std::all_of(t.begin(), t.end(), [](bool b) { return b; });
}

}  // namespace

Ideal make_ideal(const Ring& r, const std::vector<Poly>& gens, const std::vector<std::string>& provenance) {
  Ideal out;
  std::vector<Poly> seen;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Poly g = r.reduce(gens[k]);
    if (g.is_zero()) continue;
    Poly n = normalized(r, g);
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
    seen.push_back(n);
    out.gens.push_back(std::move(g));
    out.provenance.push_back(k < provenance.size() ? provenance[k] : std::string());
  }
  return out;
}

Ideal zero_ideal() { return {}; }

Ideal unit_ideal(const Ring& r, const std::string& tag) { return make_ideal(r, {r.one()}, {tag}); }

bool ideal_is_zero(const Ideal& i) { return i.gens.empty(); }

IdealSpan::IdealSpan(const Ring& r, std::vector<Monomial> monomials) : ring_(r), monomials_(std::move(monomials)) {
  for (std::size_t k = 0; k < monomials_.size(); ++k) index_.emplace(monomials_[k], static_cast<int>(k));
}

IdealSpan::Row IdealSpan::to_row(const Poly& f, bool& outside) const {
  Row v;
  outside = false;
  for (const auto& [m, c] : f.terms) {
    auto it = index_.find(m);
    if (it == index_.end()) {
      outside = true;
      return {};
    }
    v.emplace(it->second, c);
  }
  return v;
}

IdealSpan::Row IdealSpan::reduced(Row v) const {
  auto it = v.begin();
  while (it != v.end()) {
    const int c = it->first;
    auto row = rows_.find(c);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const Rational f = it->second;
    for (const auto& [j, x] : row->second) {
      auto [e, fresh] = v.emplace(j, -f * x);
      if (!fresh) {
        e->second -= f * x;
        if (e->second == 0) v.erase(e);
      }
    }
    it = v.upper_bound(c);
  }
  return v;
}

void IdealSpan::insert(Row v) {
  v = reduced(std::move(v));
  if (v.empty()) return;
  const Rational lead = v.begin()->second;
  for (auto& [j, x] : v) x /= lead;
  const int pivot = v.begin()->first;
  rows_.emplace(pivot, std::move(v));
}

void IdealSpan::add_generator(const Poly& g) {
  if (g.is_zero()) return;
  for (const auto& m : monomials_) {
    if (full()) return;
    Poly p = ring_.mul(ring_.monomial(m), g);
    bool outside = false;
    Row v = to_row(p, outside);
    if (!outside) insert(std::move(v));
  }
}

bool IdealSpan::contains(const Poly& f) const {
  bool outside = false;
  Row v = to_row(f, outside);
  if (outside) return false;
  return reduced(std::move(v)).empty();
}

Truth ideal_is_unit(const Ring& r, const Ideal& i) {
  if (r.artinian()) {
    for (const auto& g : i.gens)
      if (g.constant_term() != 0) return Truth::yes;
    return Truth::no;
  }
  return ideal_contains(r, i, r.one());
}

Truth ideal_contains(const Ring& r, const Ideal& i, const Poly& f0, std::optional<int> degree_bound) {
  const Poly f = r.reduce(f0);
  if (f.is_zero()) return Truth::yes;
  if (i.gens.empty()) return Truth::no;
  if (r.spec().kind == RingKind::field) return Truth::yes;
  if (!all_truncated(r)) throw std::invalid_argument("membership over rings with untruncated extra variables");
  if (r.artinian()) {
    IdealSpan span(r, r.basis());
    for (const auto& g : i.gens) span.add_generator(g);
    return span.contains(f) ? Truth::yes : Truth::no;
  }
  int bound = f.degree();
  bool homogeneous = f.is_homogeneous();
  for (const auto& g : i.gens) {
    bound = std::max(bound, g.degree());
    homogeneous = homogeneous && g.is_homogeneous();
  }
  if (degree_bound) bound = std::max(*degree_bound, f.degree());
  IdealSpan span(r, r.monomials_up_to(bound));
  for (const auto& g : i.gens) span.add_generator(g);
  if (span.contains(f)) return Truth::yes;
  return homogeneous ? Truth::no : Truth::unknown;
}

Truth ideal_contains(const Ring& r, const Ideal& i, const Ideal& j, std::optional<int> degree_bound) {
  if (j.gens.empty()) return Truth::yes;
  if (r.artinian() && r.spec().kind != RingKind::field && !i.gens.empty()) {
    IdealSpan span(r, r.basis());
    for (const auto& g : i.gens) span.add_generator(g);
    for (const auto& g : j.gens)
      if (!span.contains(r.reduce(g))) return Truth::no;
    return Truth::yes;
  }
  Truth acc = Truth::yes;
  for (const auto& g : j.gens) {
    Truth t = ideal_contains(r, i, g, degree_bound);
    if (t == Truth::no) return Truth::no;
    if (t == Truth::unknown) acc = Truth::unknown;
  }
  return acc;
}

Truth ideals_equal(const Ring& r, const Ideal& a, const Ideal& b, std::optional<int> degree_bound) {
  Truth x = ideal_contains(r, a, b, degree_bound);
  if (x == Truth::no) return Truth::no;
  Truth y = ideal_contains(r, b, a, degree_bound);
  if (y == Truth::no) return Truth::no;
  return x == Truth::yes && y == Truth::yes ? Truth::yes : Truth::unknown;
}

Ideal ideal_sum(const Ring& r, const Ideal& a, const Ideal& b) {
  std::vector<Poly> g = a.gens;
  std::vector<std::string> p = a.provenance;
  g.insert(g.end(), b.gens.begin(), b.gens.end());
  p.insert(p.end(), b.provenance.begin(), b.provenance.end());
  return make_ideal(r, g, p);
}

Ideal ideal_product(const Ring& r, const Ideal& a, const Ideal& b) {
  std::vector<Poly> g;
  std::vector<std::string> p;
  for (std::size_t x = 0; x < a.gens.size(); ++x)
    for (std::size_t y = 0; y < b.gens.size(); ++y) {
      g.push_back(r.mul(a.gens[x], b.gens[y]));
      p.push_back(a.provenance[x] + "*" + b.provenance[y]);
    }
  return make_ideal(r, g, p);
}

Ideal ideal_image(const Ring& from, const Ideal& i, const Ring& to) {
  std::vector<Poly> g;
  for (const auto& x : i.gens) g.push_back(from.map_to(x, to));
  return make_ideal(to, g, i.provenance);
}

Ideal minimize(const Ring& r, const Ideal& i) {
  if (!r.artinian() || r.spec().kind == RingKind::field) {
    if (r.spec().kind == RingKind::field && !i.gens.empty()) return unit_ideal(r, i.provenance.front());
    return i;
  }
  std::vector<std::size_t> order(i.gens.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_pair(i.gens[a].low_degree(), i.gens[a].terms.size()) <
           std::make_pair(i.gens[b].low_degree(), i.gens[b].terms.size());
  });
  IdealSpan span(r, r.basis());
  Ideal out;
  for (std::size_t k : order) {
    if (span.contains(i.gens[k])) continue;
    span.add_generator(i.gens[k]);
    out.gens.push_back(i.gens[k]);
    out.provenance.push_back(i.provenance[k]);
  }
  return out;
}

}  // namespace hse
