#include "hse/io.hpp"

#include "hse/fixtures.hpp"
#include "hse/transfer.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hse {

namespace {

std::string entry_text(const Tuple& t, const GradedSpace& in, const GradedSpace* last) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    const GradedSpace& sp = (last && k + 1 == t.size()) ? *last : in;
    s += (k ? "," : "") + sp[t[k]].label;
  }
  return s + ")";
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(where + ": missing field '" + key + "'");
  return j.at(key);
}

int label_index(const GradedSpace& s, const Json& label, const std::string& where) {
  if (!label.is_string()) throw std::invalid_argument(where + ": labels must be strings");
  const auto i = s.find(label.get<std::string>());
  if (!i) throw std::invalid_argument(where + ": unknown label '" + label.get<std::string>() + "'");
  return *i;
}

Json family_json(const MapFamily& f, const GradedSpace& in, const GradedSpace& out, const GradedSpace* last = nullptr) {
  Json maps = Json::object();
  for (const auto& [n, m] : f)
    if (!m.empty()) maps[std::to_string(n)] = to_json(m, in, out, last);
  return maps;
}

template <class Blank>
MapFamily family_from_json(const Json& j, Blank blank, const GradedSpace& in, const GradedSpace& out,
                           const GradedSpace* last, const std::string& where) {
  MapFamily f;
  if (!j.is_object()) throw std::invalid_argument(where + ": 'maps' must be an object keyed by arity");
  for (const auto& [key, value] : j.items()) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw std::invalid_argument(where + ": arity key '" + key + "' is not an integer");
    }
    if (n < 1) throw std::invalid_argument(where + ": arity " + key + " must be positive");
    MultiMap m;
    try {
      m = multimap_from_json(value, blank(n), in, out, last);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": map " + key + ": " + e.what());
    }
    if (!m.empty()) f.emplace(n, std::move(m));
  }
  return f;
}

Json kind_json(StructureKind k, const GradedSpace& s, const MapFamily& maps) {
  Json j;
  j["kind"] = to_string(k);
  j["space"] = to_json(s);
  j["maps"] = k == StructureKind::ainf || k == StructureKind::linf ? family_json(maps, s, s) : Json::object();
  return j;
}

LInfAlgebra algebra_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& where) {
  StructurePackage a = parse_structure(j, base_dir);
  if (a.kind == StructureKind::linf) return a.as_linf();
  if (a.kind == StructureKind::ainf) return antisymmetrize(a.as_ainf());
  throw std::invalid_argument(where + ": the algebra of a pair must be an ainf or linf structure");
}

}  // namespace

std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::ainf:
      return "ainf";
    case StructureKind::linf:
      return "linf";
    case StructureKind::module:
      return "module";
    case StructureKind::pair:
      return "pair";
  }
  return "ainf";
}

StructureKind parse_structure_kind(const std::string& s) {
  if (s == "ainf") return StructureKind::ainf;
  if (s == "linf") return StructureKind::linf;
  if (s == "module") return StructureKind::module;
  if (s == "pair") return StructureKind::pair;
  throw std::invalid_argument("unknown structure kind '" + s + "'");
}

AInfAlgebra StructurePackage::as_ainf() const {
  if (kind != StructureKind::ainf) throw std::invalid_argument("expected an ainf structure, got " + to_string(kind));
  return {space, maps};
}

LInfAlgebra StructurePackage::as_linf() const {
  if (kind == StructureKind::ainf) return antisymmetrize(as_ainf());
  if (kind != StructureKind::linf) throw std::invalid_argument("expected an linf structure, got " + to_string(kind));
  return {space, maps};
}

LInfPair StructurePackage::as_pair() const {
  if (kind == StructureKind::ainf) return regular_pair(as_ainf());
  if (kind == StructureKind::linf) throw std::invalid_argument("expected a pair, got an linf structure");
  if (!algebra) throw std::invalid_argument("module without its algebra");
  return {*algebra, {space, maps}};
}

StructurePackage package(const AInfAlgebra& a) { return {StructureKind::ainf, a.space, a.products, {}, {}}; }
StructurePackage package(const LInfAlgebra& l) { return {StructureKind::linf, l.space, l.brackets, {}, {}}; }
StructurePackage package(const LInfPair& p) {
  return {StructureKind::pair, p.module.space, p.module.actions, p.algebra, {}};
}

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("scalars must be \"p/q\" strings or integers");
}

Json to_json(const GradedSpace& s) {
  Json a = Json::array();
  for (const auto& b : s.basis()) {
    Json e;
    e["label"] = b.label;
    e["deg"] = b.deg;
    e["weight"] = b.weight ? Json(*b.weight) : Json(nullptr);
    a.push_back(std::move(e));
  }
  return a;
}

GradedSpace space_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("space: expected an array of basis elements");
  std::vector<BasisElement> basis;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string where = "space element " + std::to_string(k);
    const Json& e = j[k];
    BasisElement b;
    const Json& label = field(e, "label", where);
    const Json& deg = field(e, "deg", where);
    if (!label.is_string() || label.get<std::string>().empty()) throw std::invalid_argument(where + ": bad label");
    if (!deg.is_number_integer()) throw std::invalid_argument(where + ": 'deg' must be an integer");
    b.label = label.get<std::string>();
    b.deg = deg.get<int>();
    if (e.contains("weight") && !e.at("weight").is_null()) {
      if (!e.at("weight").is_number_integer()) throw std::invalid_argument(where + ": 'weight' must be an integer or null");
      b.weight = e.at("weight").get<int>();
    }
    basis.push_back(std::move(b));
  }
  return GradedSpace(std::move(basis));
}

Json to_json(const MultiMap& m, const GradedSpace& in, const GradedSpace& out, const GradedSpace* last) {
  Json j;
  j["arity"] = m.arity();
  j["shift"] = m.shift();
  Json entries = Json::array();
  for (const auto& [t, v] : m.entries()) {
    if (v.empty()) continue;
    Json e;
    Json labels = Json::array();
    for (std::size_t k = 0; k < t.size(); ++k) labels.push_back(((last && k + 1 == t.size()) ? *last : in)[t[k]].label);
    e["in"] = std::move(labels);
    Json outs = Json::array();
    for (const auto& [o, c] : v) outs.push_back(Json{{"label", out[o].label}, {"coef", to_json(c)}});
    e["out"] = std::move(outs);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

MultiMap multimap_from_json(const Json& j, MultiMap blank, const GradedSpace& in, const GradedSpace& out,
                            const GradedSpace* last) {
  const std::string where = "arity " + std::to_string(blank.arity());
  if (j.contains("arity") && j.at("arity") != blank.arity())
    throw std::invalid_argument(where + ": 'arity' field disagrees with its key");
  if (j.contains("shift") && j.at("shift") != blank.shift())
    throw std::invalid_argument(where + ": shift must be " + std::to_string(blank.shift()));
  const Json& entries = field(j, "entries", where);
  if (!entries.is_array()) throw std::invalid_argument(where + ": 'entries' must be an array");
  const bool weighted = in.weighted() && out.weighted() && (!last || last->weighted());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Json& e = entries[k];
    const std::string at = "entry " + std::to_string(k);
    const Json& labels = field(e, "in", at);
    if (!labels.is_array() || static_cast<int>(labels.size()) != blank.arity())
      throw std::invalid_argument(at + ": expected " + std::to_string(blank.arity()) + " input labels");
    Tuple t;
    int deg = blank.shift(), weight = 0;
    for (std::size_t s = 0; s < labels.size(); ++s) {
      const GradedSpace& sp = (last && s + 1 == labels.size()) ? *last : in;
      const int i = label_index(sp, labels[s], at);
      t.push_back(i);
      deg += sp.degree(i);
      weight += sp.weight(i).value_or(0);
    }
    const std::string name = entry_text(t, in, last);
    const Json& outs = field(e, "out", at);
    if (!outs.is_array()) throw std::invalid_argument(at + ": 'out' must be an array");
    for (const Json& o : outs) {
      const int i = label_index(out, field(o, "label", at), at);
      const Rational c = rational_from_json(field(o, "coef", at));
      if (out.degree(i) != deg)
        throw std::invalid_argument("entry " + name + " -> " + out[i].label + " has degree " +
                                    std::to_string(out.degree(i)) + ", the shift requires " + std::to_string(deg));
      if (weighted && out.weight(i).value_or(0) != weight)
        throw std::invalid_argument("entry " + name + " -> " + out[i].label + " has weight " +
                                    std::to_string(out.weight(i).value_or(0)) + ", expected " + std::to_string(weight));
      if (c != 0) blank.add(t, i, c);
    }
  }
  return blank;
}

Json to_json(const StructurePackage& p) {
  Json j;
  j["kind"] = to_string(p.kind);
  if (p.algebra_ref) j["algebra_ref"] = *p.algebra_ref;
  const bool module_like = p.kind == StructureKind::pair || p.kind == StructureKind::module;
  if (module_like && !p.algebra) throw std::invalid_argument(to_string(p.kind) + " without its algebra");
  if (p.kind == StructureKind::pair) {
    j["algebra"] = kind_json(StructureKind::linf, p.algebra->space, p.algebra->brackets);
  }
  j["space"] = to_json(p.space);
  if (p.kind == StructureKind::ainf || p.kind == StructureKind::linf)
    j["maps"] = family_json(p.maps, p.space, p.space);
  else
    j["maps"] = family_json(p.maps, p.algebra->space, p.space, &p.space);
  return j;
}

StructurePackage parse_structure(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("structure: expected a JSON object");
  const Json& k = field(j, "kind", "structure");
  if (!k.is_string()) throw std::invalid_argument("structure: 'kind' must be a string");
  StructurePackage p;
  p.kind = parse_structure_kind(k.get<std::string>());
  p.space = space_from_json(field(j, "space", "structure"));
  const Json empty = Json::object();
  const Json& maps = j.contains("maps") ? j.at("maps") : empty;
  switch (p.kind) {
    case StructureKind::ainf: {
      p.maps = family_from_json(maps, [](int n) { return ainf_product(n); }, p.space, p.space, nullptr, "ainf");
      validate(p.as_ainf());
      break;
    }
    case StructureKind::linf: {
      const GradedSpace& s = p.space;
      p.maps = family_from_json(maps, [&](int n) { return linf_bracket(s, n); }, s, s, nullptr, "linf");
      validate(p.as_linf());
      break;
    }
    case StructureKind::module:
    case StructureKind::pair: {
      if (p.kind == StructureKind::pair) {
        p.algebra = algebra_from_json(field(j, "algebra", "pair"), base_dir, "pair");
      } else {
        const Json& ref = field(j, "algebra_ref", "module");
        if (!ref.is_string()) throw std::invalid_argument("module: 'algebra_ref' must be a path");
        p.algebra_ref = ref.get<std::string>();
        const auto file = base_dir / *p.algebra_ref;
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("module: cannot open algebra_ref " + file.string());
        p.algebra = algebra_from_json(Json::parse(in), file.parent_path(), "module");
      }
      const GradedSpace& l = p.algebra->space;
      p.maps = family_from_json(maps, [&](int n) { return module_action(l, n); }, l, p.space, &p.space,
                                to_string(p.kind));
      validate(p.as_pair());
      break;
    }
  }
  return p;
}

StructurePackage load_structure(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open " + file.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(file.string() + ": " + e.what());
  }
  return parse_structure(j, file.parent_path());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string serialize(const StructurePackage& p) { return dump(to_json(p)); }

Json to_json(const InfMorphism& f, const GradedSpace& src, const GradedSpace& dst, const GradedSpace* module_src) {
  Json j;
  j["kind"] = f.kind == MorphismKind::ainf ? "ainf" : f.kind == MorphismKind::linf ? "linf" : "module";
  j["components"] = f.kind == MorphismKind::module ? family_json(f.components, src, dst, module_src)
                                                   : family_json(f.components, src, dst);
  return j;
}

InfMorphism morphism_from_json(const Json& j, const GradedSpace& src, const GradedSpace& dst,
                               const GradedSpace* module_src) {
  InfMorphism f;
  const std::string k = field(j, "kind", "morphism").get<std::string>();
  const Json& comps = field(j, "components", "morphism");
  if (k == "ainf") {
    f.kind = MorphismKind::ainf;
    f.components = family_from_json(comps, [](int n) { return ainf_morphism_component(n); }, src, dst, nullptr, "morphism");
  } else if (k == "linf") {
    f.kind = MorphismKind::linf;
    f.components =
        family_from_json(comps, [&](int n) { return linf_morphism_component(src, n); }, src, dst, nullptr, "morphism");
  } else if (k == "module") {
    if (!module_src) throw std::invalid_argument("module morphism needs the source module space");
    f.kind = MorphismKind::module;
    f.components = family_from_json(comps, [&](int n) { return module_morphism_component(src, n); }, src, dst,
                                    module_src, "morphism");
  } else {
    throw std::invalid_argument("morphism: unknown kind '" + k + "'");
  }
  return f;
}

Json to_json(const Ring& r, const Ideal& i) {
  Json j;
  j["ring"] = r.descriptor();
  Json gens = Json::array();
  for (std::size_t k = 0; k < i.gens.size(); ++k)
    gens.push_back(Json{{"poly", r.to_string(i.gens[k])}, {"provenance", k < i.provenance.size() ? i.provenance[k] : ""}});
  j["generators"] = std::move(gens);
  return j;
}

Ideal ideal_from_json(const Ring& r, const Json& j) {
  std::vector<Poly> gens;
  std::vector<std::string> prov;
  for (const Json& g : field(j, "generators", "ideal")) {
    gens.push_back(r.parse_element(field(g, "poly", "ideal generator").get<std::string>()));
    prov.push_back(g.contains("provenance") ? g.at("provenance").get<std::string>() : std::string());
  }
  return make_ideal(r, gens, prov);
}

Json to_json(const Ring& r, const GradedSpace& s, const RingVec& v) {
  Json j = Json::object();
  for (const auto& [i, p] : v)
    if (!p.is_zero()) j[s[i].label] = r.to_string(p);
  return j;
}

RingVec ring_vector_from_json(const Ring& r, const GradedSpace& s, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("ring vector: expected {label: element}");
  std::map<std::string, std::string> entries;
  for (const auto& [label, value] : j.items()) {
    if (!value.is_string()) throw std::invalid_argument("ring vector: entry at '" + label + "' must be a string");
    entries.emplace(label, value.get<std::string>());
  }
  return ring_vector(r, s, entries);
}

Json to_json(const Ring& r, const RingMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(r.to_string(m.at(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CheckReport& c, const GradedSpace& space) {
  Json j;
  j["identity"] = c.identity;
  j["max_arity"] = c.max_arity;
  j["tuples_checked"] = c.tuples_checked;
  j["violations"] = c.violation_count;
  j["passed"] = c.passed();
  Json list = Json::array();
  for (const auto& v : c.violations) {
    Json in = Json::array();
    for (int x : v.input) in.push_back(x < space.dim() ? space[x].label : std::to_string(x));
    Json res = Json::object();
    for (const auto& [o, x] : v.residual) res[o < space.dim() ? space[o].label : std::to_string(o)] = to_json(x);
    list.push_back(Json{{"arity", v.arity}, {"input", std::move(in)}, {"residual", std::move(res)}});
  }
  j["stored_violations"] = std::move(list);
  return j;
}

StructurePackage generate_fixture(const FixtureDescriptor& d) {
  AInfAlgebra a;
  if (d.recipe == "exterior") {
    if (d.n < 0) throw std::invalid_argument("exterior: negative number of generators");
    a = exterior_algebra(d.n, d.weighted);
  } else if (d.recipe == "heisenberg") {
    a = heisenberg(d.weighted);
  } else if (d.recipe == "torus2") {
    a = torus2(d.weighted);
  } else if (d.recipe == "weight0") {
    a = weight_zero_circle();
  } else if (d.recipe == "random") {
    a = random_dga(d.seed, d.dims.empty() ? std::vector<int>{1, 2, 2, 1} : d.dims);
  } else if (d.recipe == "random-cdga") {
    a = random_cdga(d.seed, d.n, d.weighted);
  } else {
    throw std::invalid_argument("unknown fixture recipe '" + d.recipe + "'");
  }
  if (d.form == "algebra") return package(a);
  if (d.form == "regular-pair") return package(regular_pair(a));
  if (d.form == "minimal-pair") return package(transfer_pair(regular_pair(a), {d.max_arity, {}, false}).minimal);
  throw std::invalid_argument("unknown fixture form '" + d.form + "'");
}

}  // namespace hse
