#include "hse/ring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <regex>
#include <stdexcept>

namespace hse {

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db;
  return a < b;
}

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

int Poly::degree() const { return terms.empty() ? -1 : monomial_degree(terms.rbegin()->first); }
int Poly::low_degree() const { return terms.empty() ? -1 : monomial_degree(terms.begin()->first); }

Rational Poly::constant_term() const {
  if (terms.empty()) return 0;
  const auto& [m, c] = *terms.begin();
  return monomial_degree(m) == 0 ? c : Rational(0);
}

bool Poly::is_homogeneous() const { return degree() == low_degree(); }

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Ring::Ring(RingSpec spec) : spec_(std::move(spec)) {
  if (spec_.truncated.empty()) spec_.truncated.assign(spec_.vars.size(), true);
  if (spec_.truncated.size() != spec_.vars.size()) throw std::invalid_argument("truncation flags do not match variables");
  for (std::size_t i = 0; i < spec_.vars.size(); ++i)
    for (std::size_t j = i + 1; j < spec_.vars.size(); ++j)
      if (spec_.vars[i] == spec_.vars[j]) throw std::invalid_argument("duplicate ring variable " + spec_.vars[i]);
  switch (spec_.kind) {
    case RingKind::field:
      if (!spec_.vars.empty()) throw std::invalid_argument("a field has no variables");
      break;
    case RingKind::truncated_local:
      if (spec_.order < 1) throw std::invalid_argument("truncation order must be at least 1");
      break;
    case RingKind::polynomial:
      if (spec_.trunc && *spec_.trunc < 0) throw std::invalid_argument("degree truncation must be non-negative");
      break;
  }
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

// "x1..x4" or "x,y,z"
std::vector<std::string> parse_var_list(const std::string& text) {
  std::vector<std::string> out;
  static const std::regex range(R"(([A-Za-z_]+)(\d+)\.\.([A-Za-z_]+)(\d+))");
  static const std::regex ident(R"([A-Za-z_][A-Za-z_0-9]*)");
  std::string rest = text;
  std::size_t start = 0;
  while (start <= rest.size()) {
    auto comma = rest.find(',', start);
    std::string item = trim(rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    std::smatch m;
    if (std::regex_match(item, m, range)) {
      if (m[1] != m[3]) throw std::invalid_argument("variable range with mismatched prefixes: " + item);
      int a = std::stoi(m[2]), b = std::stoi(m[4]);
      if (a > b) throw std::invalid_argument("empty variable range: " + item);
      for (int i = a; i <= b; ++i) out.push_back(m[1].str() + std::to_string(i));
    } else if (std::regex_match(item, ident)) {
      out.push_back(item);
    } else {
      throw std::invalid_argument("bad ring variable '" + item + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string var_list_text(const std::vector<std::string>& vars) {
  static const std::regex numbered(R"(([A-Za-z_]+)(\d+))");
  if (vars.size() >= 3) {
    std::smatch m0;
    if (std::regex_match(vars[0], m0, numbered)) {
      const std::string prefix = m0[1];
      const int first = std::stoi(m0[2]);
      bool run = std::to_string(first) == m0[2].str();
      for (std::size_t i = 0; run && i < vars.size(); ++i) run = vars[i] == prefix + std::to_string(first + static_cast<int>(i));
      if (run) return vars.front() + ".." + vars.back();
    }
  }
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
  return s;
}

}  // namespace

Ring Ring::parse(const std::string& descriptor) {
  const std::string d = trim(descriptor);
  static const std::regex field(R"(Q|QQ)");
  static const std::regex local(R"(Q\[([^\]]+)\]\s*/\s*\(\s*([A-Za-z_][A-Za-z_0-9]*)\s*\^\s*(\d+)\s*\))");
  static const std::regex poly(R"(poly\(([^=)]*?)(?:,\s*trunc\s*=\s*(\d+))?\s*\))");
  static const std::regex qpoly(R"(Q\[([^\]]+)\])");
  std::smatch m;
  RingSpec spec;
  if (std::regex_match(d, field)) return Ring(spec);
  if (std::regex_match(d, m, local)) {
    spec.kind = RingKind::truncated_local;
    spec.vars = parse_var_list(m[1]);
    const std::string gen = m[2];
    if (gen != "m" && !(spec.vars.size() == 1 && gen == spec.vars[0]))
      throw std::invalid_argument("truncation must be by m or by the single variable: " + d);
    spec.order = std::stoi(m[3]);
    return Ring(spec);
  }
  if (std::regex_match(d, m, poly) || std::regex_match(d, m, qpoly)) {
    spec.kind = RingKind::polynomial;
    spec.vars = parse_var_list(m[1]);
    if (m.size() > 2 && m[2].matched) spec.trunc = std::stoi(m[2]);
    return Ring(spec);
  }
  throw std::invalid_argument("unrecognized ring descriptor '" + descriptor + "'");
}

std::string Ring::descriptor() const {
  const bool all_trunc = std::all_of(spec_.truncated.begin(), spec_.truncated.end(), [](bool b) { return b; });
  std::string extra;
  if (!all_trunc) {
    for (std::size_t i = 0; i < spec_.vars.size(); ++i)
      if (!spec_.truncated[i]) extra += "[" + spec_.vars[i] + "]";
  }
  switch (spec_.kind) {
    case RingKind::field:
      return "Q";
    case RingKind::truncated_local: {
      std::vector<std::string> tv;
      for (std::size_t i = 0; i < spec_.vars.size(); ++i)
        if (spec_.truncated[i]) tv.push_back(spec_.vars[i]);
      if (tv.size() == 1) return "Q[" + tv[0] + "]/(" + tv[0] + "^" + std::to_string(spec_.order) + ")" + extra;
      return "Q[" + var_list_text(tv) + "]/(m^" + std::to_string(spec_.order) + ")" + extra;
    }
    case RingKind::polynomial: {
      std::vector<std::string> tv;
      for (std::size_t i = 0; i < spec_.vars.size(); ++i)
        if (spec_.truncated[i]) tv.push_back(spec_.vars[i]);
      std::string s = "poly(" + var_list_text(tv);
      if (spec_.trunc) s += ", trunc=" + std::to_string(*spec_.trunc);
      return s + ")" + extra;
    }
  }
  return "";
}

int Ring::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < spec_.vars.size(); ++i)
    if (spec_.vars[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown ring variable '" + name + "'");
}

std::optional<int> Ring::cutoff() const {
  if (spec_.kind == RingKind::truncated_local) return spec_.order - 1;
  if (spec_.kind == RingKind::polynomial && spec_.trunc) return *spec_.trunc;
  return std::nullopt;
}

bool Ring::artinian() const {
  if (spec_.kind == RingKind::field) return true;
  if (!cutoff()) return false;
  return std::all_of(spec_.truncated.begin(), spec_.truncated.end(), [](bool b) { return b; });
}

std::optional<int> Ring::nilpotency_order() const {
  if (spec_.kind == RingKind::field) return 1;
  if (!artinian()) return std::nullopt;
  return *cutoff() + 1;
}

Ring Ring::adjoin(const std::string& name) const {
  RingSpec s = spec_;
  if (s.kind == RingKind::field) {
    s.kind = RingKind::polynomial;
    s.trunc.reset();
  }
  s.vars.push_back(name);
  s.truncated.push_back(false);
  return Ring(s);
}

Ring Ring::quotient(int order) const {
  if (spec_.kind == RingKind::field) return *this;
  RingSpec s = spec_;
  s.kind = RingKind::truncated_local;
  s.order = order;
  s.trunc.reset();
  return Ring(s);
}

bool Ring::keep(const Monomial& m) const {
  auto c = cutoff();
  if (!c) return true;
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (spec_.truncated[i]) d += m[i];
  return d <= *c;
}

Poly Ring::constant(const Rational& c) const {
  Poly p;
  p.add_term(Monomial(static_cast<std::size_t>(nvars()), 0), c);
  return p;
}

Poly Ring::var(int i) const {
  if (i < 0 || i >= nvars()) throw std::invalid_argument("variable index out of range");
  Monomial m(static_cast<std::size_t>(nvars()), 0);
  m[static_cast<std::size_t>(i)] = 1;
  return monomial(m);
}

Poly Ring::monomial(const Monomial& m, const Rational& c) const {
  if (static_cast<int>(m.size()) != nvars()) throw std::invalid_argument("monomial has the wrong number of variables");
  Poly p;
  if (keep(m)) p.add_term(m, c);
  return p;
}

Poly Ring::reduce(const Poly& a) const {
  Poly out;
  for (const auto& [m, c] : a.terms) {
    if (static_cast<int>(m.size()) != nvars()) throw std::invalid_argument("variable-count mismatch");
    if (keep(m)) out.terms.emplace(m, c);
  }
  return out;
}

Poly Ring::add(const Poly& a, const Poly& b) const {
  Poly out = a;
  for (const auto& [m, c] : b.terms) out.add_term(m, c);
  return out;
}

Poly Ring::sub(const Poly& a, const Poly& b) const {
  Poly out = a;
  for (const auto& [m, c] : b.terms) out.add_term(m, -c);
  return out;
}

Poly Ring::neg(const Poly& a) const { return scale(a, Rational(-1)); }

Poly Ring::scale(const Poly& a, const Rational& c) const {
  Poly out;
  if (c == 0) return out;
  for (const auto& [m, v] : a.terms) out.terms.emplace(m, v * c);
  return out;
}

Poly Ring::mul(const Poly& a, const Poly& b) const {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  Monomial m(static_cast<std::size_t>(nvars()));
  for (const auto& [ma, ca] : a.terms) {
    if (static_cast<int>(ma.size()) != nvars()) throw std::invalid_argument("variable-count mismatch");
    for (const auto& [mb, cb] : b.terms) {
      if (static_cast<int>(mb.size()) != nvars()) throw std::invalid_argument("variable-count mismatch");
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      if (keep(m)) out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly Ring::pow(const Poly& a, int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  Poly r = one();
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

Poly Ring::derivative(const Poly& a, int i) const {
  Poly out;
  for (const auto& [m, c] : a.terms) {
    const int e = m[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    Monomial n = m;
    --n[static_cast<std::size_t>(i)];
    out.add_term(n, c * e);
  }
  return out;
}

Poly Ring::substitute(const Poly& a, int i, const Rational& c) const {
  Poly out;
  for (const auto& [m, v] : a.terms) {
    Monomial n = m;
    const int e = n[static_cast<std::size_t>(i)];
    n[static_cast<std::size_t>(i)] = 0;
    Rational f = v;
    for (int k = 0; k < e; ++k) f *= c;
    out.add_term(n, f);
  }
  return out;
}

Poly Ring::eliminate(const Poly& a, int i, const Rational& c, const Ring& target) const {
  if (target.nvars() != nvars() - 1) throw std::invalid_argument("target ring must have one variable fewer");
  Poly s = substitute(a, i, c), out;
  for (const auto& [m, v] : s.terms) {
    Monomial n;
    for (int j = 0; j < nvars(); ++j)
      if (j != i) n.push_back(m[static_cast<std::size_t>(j)]);
    if (target.keep(n)) out.add_term(n, v);
  }
  return out;
}

Poly Ring::map_to(const Poly& a, const Ring& target) const {
  const int common = std::min(nvars(), target.nvars());
  for (int i = 0; i < common; ++i)
    if (target.spec_.vars[static_cast<std::size_t>(i)] != spec_.vars[static_cast<std::size_t>(i)])
      throw std::invalid_argument("target ring variables do not match");
  Poly out;
  for (const auto& [m, v] : a.terms) {
    bool drop = false;
    for (int j = common; j < nvars(); ++j) drop = drop || m[static_cast<std::size_t>(j)] != 0;
    if (drop) continue;
    Monomial n(m.begin(), m.begin() + common);
    n.resize(static_cast<std::size_t>(target.nvars()), 0);
    if (target.keep(n)) out.add_term(n, v);
  }
  return out;
}

Rational Ring::eval(const Poly& a, std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars()) throw std::invalid_argument("variable-count mismatch");
  Rational s = 0;
  for (const auto& [m, c] : a.terms) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    s += t;
  }
  return s;
}

namespace {

class ElementParser {
 public:
  ElementParser(const Ring& r, const std::string& s) : r_(r), s_(s) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad ring element '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string integer() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail("expected a number");
    return s_.substr(b, pos_ - b);
  }
  Poly expr() {
    skip();
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    Poly acc = term();
    if (negate) acc = r_.neg(acc);
    while (true) {
      if (eat('+'))
        acc = r_.add(acc, term());
      else if (eat('-'))
        acc = r_.sub(acc, term());
      else
        break;
    }
    return acc;
  }
  Poly term() {
    Poly acc = factor();
    while (true) {
      if (eat('*')) {
        acc = r_.mul(acc, factor());
      } else if (eat('/')) {
        mpz_class q(integer());
        if (q == 0) fail("division by zero");
        acc = r_.scale(acc, Rational(1) / Rational(q));
      } else {
        break;
      }
    }
    return acc;
  }
  Poly factor() {
    Poly b = base();
    if (eat('^')) {
      const std::string e = integer();
      if (e.size() > 6) fail("exponent too large");
      b = r_.pow(b, std::stoi(e));
    }
    return b;
  }
  Poly base() {
    skip();
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      return r_.constant(Rational(mpz_class(integer())));
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (b == pos_) fail("expected a term");
    return r_.var(s_.substr(b, pos_ - b));
  }

  const Ring& r_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Ring::parse_element(const std::string& s) const { return ElementParser(*this, s).parse(); }

std::string Ring::to_string(const Poly& a) const {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += spec_.vars[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    Rational mag = abs(c);
    const bool negative = c < 0;
    std::string coef;
    if (mono.empty())
      coef = hse::to_string(mag);
    else if (mag != 1)
      coef = hse::to_string(mag) + "*";
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coef + mono;
    first = false;
  }
  return out;
}

std::vector<Monomial> Ring::monomials_up_to(int bound) const {
  std::vector<Monomial> out;
  const int n = nvars();
  Monomial m(static_cast<std::size_t>(n), 0);
  std::vector<int> tv;
  for (int i = 0; i < n; ++i)
    if (spec_.truncated[static_cast<std::size_t>(i)]) tv.push_back(i);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == tv.size()) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m[static_cast<std::size_t>(tv[k])] = e;
      rec(k + 1, left - e);
    }
    m[static_cast<std::size_t>(tv[k])] = 0;
  };
  if (bound >= 0) rec(0, bound);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

std::vector<Monomial> Ring::basis() const {
  if (!artinian()) throw std::invalid_argument("ring " + descriptor() + " is not finite-dimensional over Q");
  if (spec_.kind == RingKind::field) return {Monomial{}};
  return monomials_up_to(*cutoff());
}

Poly initial_form(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("initial form of zero");
  return homogeneous_part(f, f.low_degree());
}

Poly homogeneous_part(const Poly& f, int d) {
  Poly out;
  for (const auto& [m, c] : f.terms)
    if (monomial_degree(m) == d) out.terms.emplace(m, c);
  return out;
}

}  // namespace hse
