#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hse/fixtures.hpp"
#include "hse/io.hpp"
#include "hse/resonance.hpp"
#include "hse/transfer.hpp"

using namespace hse;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::uint64_t seed = 1;
  int max_arity = 0;
  std::string ring;
  std::optional<int> trunc;
  std::string out;
  std::string format = "json";
};

struct Local {
  std::string file;
  std::string mc;
  std::vector<std::string> identities;
  int i = 0, k = 0;
  bool exact = false;
  int samples = 100;
  std::string emit = "structure";
  std::string weights;
  std::string recipe;
  int n = 2;
  std::vector<int> dims;
  std::string form = "algebra";
  bool unweighted = false;
};

struct Outcome {
  Json result = Json::object();
  std::vector<std::pair<std::string, bool>> checks;
  std::string ring = "Q";
  int max_arity = 0;
  std::optional<std::string> error;
  bool raw = false;  ///< print `result` as is (fixtures)
};

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex << h;
  return o.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

StructurePackage load(const Local& l) {
  if (l.file.empty()) throw UsageError("missing input file");
  try {
    return load_structure(l.file);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

bool is_minimal(const LInfPair& p) {
  const MultiMap* l1 = component(p.algebra.brackets, 1);
  const MultiMap* m1 = component(p.module.actions, 1);
  return (!l1 || l1->empty()) && (!m1 || m1->empty());
}

LInfPair minimal_of(const StructurePackage& s, int& max_arity) {
  LInfPair p = s.as_pair();
  if (is_minimal(p)) {
    max_arity = std::max(top_arity(p.algebra.brackets), top_arity(p.module.actions));
    return p;
  }
  PairTransfer t = transfer_pair(p, {max_arity, {}, false});
  max_arity = t.max_arity;
  return t.minimal;
}

Ring ring_of(const Global& g, const Json* mc, const std::string& fallback) {
  std::string d = g.ring;
  if (d.empty() && mc && mc->contains("ring")) d = mc->at("ring").get<std::string>();
  if (d.empty()) d = fallback;
  try {
    return Ring::parse(d);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Json read_mc(const Local& l) {
  if (l.mc.empty()) return Json(nullptr);
  try {
    return Json::parse(read_file(l.mc));
  } catch (const Json::parse_error& e) {
    throw UsageError(l.mc + ": " + e.what());
  }
}

RingVec mc_element(const Ring& r, const GradedSpace& s, const Json& mc) {
  if (mc.is_null()) return {};
  return ring_vector_from_json(r, s, mc.contains("element") ? mc.at("element") : mc);
}

Json labelled(const GradedSpace& s, const std::vector<int>& idx) {
  Json a = Json::array();
  for (int i : idx) a.push_back(s[i].label);
  return a;
}

Json cohomology_json(const GradedSpace& space, const QMatrix& d) {
  TransferDiagram t = cohomology_splitting(space, d);
  Json j;
  Json dims = Json::object();
  if (t.small.dim() > 0)
    for (int i = t.small.min_degree(); i <= t.small.max_degree(); ++i) dims[std::to_string(i)] = t.small.dim_in_degree(i);
  j["dims"] = std::move(dims);
  Json basis = Json::array();
  for (int i = 0; i < t.small.dim(); ++i) basis.push_back(t.small[i].label);
  j["basis"] = std::move(basis);
  return j;
}

int default_check_arity(const GradedSpace& s, int flag) {
  if (flag > 0) return flag;
  return std::min(window_arity_bound(s).value_or(4), 6);
}

Json complex_json(const TwistedComplex& t) {
  Json j = Json::object();
  for (const auto& [i, m] : t.d) j[std::to_string(i)] = to_json(t.ring, m);
  return j;
}

Json samples_json(const ResonanceResult& r) {
  Json rows = Json::array();
  for (const auto& s : r.samples) {
    Json p = Json::array();
    for (const auto& x : s.point) p.push_back(to_string(x));
    rows.push_back(Json{{"point", p}, {"vanishes", s.vanishes}, {"cohomology", s.cohomology}, {"jumps", s.jumps}});
  }
  return rows;
}

Json resonance_json(const ResonanceResult& r) {
  Json j;
  j["i"] = r.i;
  j["k"] = r.k;
  j["s"] = r.s;
  j["mode"] = r.universal.exact ? "exact" : "truncated";
  j["bound"] = r.universal.bound;
  j["ideal"] = to_json(r.universal.complex.ring, r.ideal);
  j["samples_consistent"] = r.samples_consistent();
  j["samples"] = samples_json(r);
  return j;
}

Outcome run_check(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  Outcome o;
  std::vector<std::string> ids = l.identities;
  if (ids.empty()) {
    if (s.kind == StructureKind::ainf) ids = {"stasheff"};
    else if (s.kind == StructureKind::linf) ids = {"jacobi"};
    else ids = {"jacobi", "module"};
  }
  o.max_arity = default_check_arity(s.space, g.max_arity);
  const CheckOptions opt{o.max_arity, false};
  Json reports = Json::array();
  for (const std::string& id : ids) {
    CheckReport rep;
    GradedSpace labels = s.space;
    if (id == "stasheff") {
      rep = stasheff_check(s.as_ainf(), opt);
    } else if (id == "jacobi") {
      LInfAlgebra a = s.kind == StructureKind::ainf ? antisymmetrize(s.as_ainf(), 0)
                      : s.kind == StructureKind::linf ? s.as_linf()
                                                       : s.as_pair().algebra;
      labels = a.space;
      rep = jacobi_check(a, opt);
    } else if (id == "module") {
      LInfPair p = s.kind == StructureKind::ainf ? regular_pair(s.as_ainf(), 0) : s.as_pair();
      labels = pair_to_algebra(p).algebra.space;
      rep = module_check(p, opt);
    } else {
      throw UsageError("unknown identity '" + id + "' (stasheff, jacobi, module)");
    }
    o.checks.emplace_back(id, rep.passed());
    reports.push_back(to_json(rep, labels));
  }
  o.result["reports"] = std::move(reports);
  return o;
}

Outcome run_cohomology(const Global&, const Local& l) {
  StructurePackage s = load(l);
  Outcome o;
  if (s.kind == StructureKind::ainf || s.kind == StructureKind::linf) {
    o.result["complex"] = cohomology_json(s.space, unary_matrix(s.maps, s.space.dim(), s.space.dim()));
  } else {
    LInfPair p = s.as_pair();
    o.result["algebra"] = cohomology_json(p.algebra.space, unary_matrix(p.algebra.brackets, p.algebra.space.dim(), p.algebra.space.dim()));
    o.result["module"] = cohomology_json(p.module.space, unary_matrix(p.module.actions, p.module.space.dim(), p.module.space.dim()));
  }
  return o;
}

Json weight_audit(const MapFamily& maps, const GradedSpace& in, const GradedSpace& out, const GradedSpace* last = nullptr) {
  Json bad = Json::array();
  if (!in.weighted() || !out.weighted()) return bad;
  for (const auto& [n, m] : maps)
    for (const Tuple& t : weight_violations(m, in, out, last)) {
      std::string e = "arity " + std::to_string(n) + " (";
      for (std::size_t k = 0; k < t.size(); ++k) e += (k ? "," : "") + ((last && k + 1 == t.size()) ? *last : in)[t[k]].label;
      bad.push_back(e + ")");
    }
  return bad;
}

Outcome run_transfer(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  Outcome o;
  if (l.weights == "require" && !s.space.weighted()) throw UsageError("--weights require: input has no weights");
  SplittingOptions so;
  so.use_weights = l.weights != "ignore";
  TransferOptions opt{g.max_arity, {}, l.emit != "structure"};
  const bool structure = l.emit != "morphisms";
  Json meta;
  const QMatrix d = unary_matrix(s.kind == StructureKind::ainf || s.kind == StructureKind::linf ? s.maps : MapFamily{},
                                 s.space.dim(), s.space.dim());
  if (s.kind == StructureKind::ainf) {
    TransferDiagram t = cohomology_splitting(s.space, d, so);
    AInfTransfer r = transfer_ainf(t, s.as_ainf(), opt);
    o.max_arity = r.max_arity;
    if (structure) o.result["structure"] = to_json(package(r.minimal));
    if (opt.morphisms) {
      o.result["phi"] = to_json(r.phi, t.big, t.small);
      o.result["psi"] = to_json(r.psi, t.small, t.big);
    }
    meta["pivots"] = labelled(t.big, t.pivots);
    const CheckReport c = stasheff_check(r.minimal, {std::min(r.max_arity, 5), false});
    o.checks.emplace_back("stasheff", c.passed());
    o.checks.emplace_back("minimal", !component(r.minimal.products, 1));
    Json w = weight_audit(r.minimal.products, r.minimal.space, r.minimal.space);
    o.checks.emplace_back("weights", w.empty());
    meta["weight_violations"] = std::move(w);
  } else if (s.kind == StructureKind::linf) {
    TransferDiagram t = cohomology_splitting(s.space, d, so);
    LInfAlgebra r = transfer_linf(t, s.as_linf(), opt);
    o.max_arity = opt.max_arity > 0 ? opt.max_arity : default_max_arity(t.small);
    if (structure) o.result["structure"] = to_json(package(r));
    meta["pivots"] = labelled(t.big, t.pivots);
    o.checks.emplace_back("jacobi", jacobi_check(r, {std::min(o.max_arity, 5), false}).passed());
    o.checks.emplace_back("minimal", !component(r.brackets, 1));
  } else {
    PairTransfer r = transfer_pair(s.as_pair(), opt);
    o.max_arity = r.max_arity;
    if (structure || !opt.morphisms) o.result["structure"] = to_json(package(r.minimal));
    meta["algebra_pivots"] = labelled(r.algebra_diagram.big, r.algebra_diagram.pivots);
    meta["module_pivots"] = labelled(r.module_diagram.big, r.module_diagram.pivots);
    o.checks.emplace_back("module", module_check(r.minimal, {std::min(r.max_arity, 5), false}).passed());
    o.checks.emplace_back("minimal", is_minimal(r.minimal));
  }
  meta["max_arity"] = o.max_arity;
  o.result["metadata"] = std::move(meta);
  return o;
}

Outcome run_mc_check(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  const Json mc = read_mc(l);
  Outcome o;
  LInfAlgebra a = s.kind == StructureKind::ainf || s.kind == StructureKind::linf ? s.as_linf() : s.as_pair().algebra;
  Ring r = ring_of(g, &mc, "Q[e]/(e^2)");
  o.ring = r.descriptor();
  o.max_arity = top_arity(a.brackets);
  MCReport rep = mc_check(a, r, mc_element(r, a.space, mc));
  o.checks.emplace_back("maurer_cartan", rep.passed);
  o.result["residual"] = to_json(r, a.space, rep.residual);
  return o;
}

Outcome run_twist(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  const Json mc = read_mc(l);
  Outcome o;
  LInfPair p = s.as_pair();
  Ring r = ring_of(g, &mc, "Q[e]/(e^2)");
  o.ring = r.descriptor();
  o.max_arity = top_arity(p.module.actions);
  ModuleTwist t = twist_module(p, r, mc_element(r, p.algebra.space, mc));
  o.checks.emplace_back("square_zero", true);
  o.result["differentials"] = complex_json(t.complex);
  return o;
}

Outcome run_jump_ideal(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  const Json mc = read_mc(l);
  Outcome o;
  LInfPair p = s.as_pair();
  Ring r = ring_of(g, &mc, "Q[e]/(e^2)");
  o.ring = r.descriptor();
  o.max_arity = top_arity(p.module.actions);
  ModuleTwist t = twist_module(p, r, mc_element(r, p.algebra.space, mc));
  Ideal j = jump_ideal(t.complex, l.i, l.k);
  o.result["i"] = l.i;
  o.result["k"] = l.k;
  o.result["s"] = p.module.space.dim_in_degree(l.i) - l.k + 1;
  o.result["ideal"] = to_json(r, j);
  o.result["in_def"] = ideal_is_zero(j);
  return o;
}

Outcome run_tangent_space(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  Outcome o;
  o.max_arity = g.max_arity;
  LInfPair p = minimal_of(s, o.max_arity);
  TangentSpace t = tangent_space(p, l.i, l.k);
  const auto h1 = p.algebra.space.in_degree(1);
  o.result["i"] = l.i;
  o.result["k"] = l.k;
  o.result["h"] = t.h;
  o.result["kind"] = to_string(t.kind);
  o.result["coordinates"] = labelled(p.algebra.space, h1);
  Json basis = Json::array();
  for (Eigen::Index c = 0; c < t.basis.cols(); ++c) {
    Json v = Json::array();
    for (Eigen::Index r = 0; r < t.basis.rows(); ++r) v.push_back(to_string(t.basis(r, c)));
    basis.push_back(std::move(v));
  }
  o.result["basis"] = std::move(basis);
  return o;
}

Outcome run_resonance(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  Outcome o;
  o.max_arity = g.max_arity;
  LInfPair p = minimal_of(s, o.max_arity);
  ResonanceResult r = resonance_ideal(p, l.i, l.k, {l.exact, g.trunc, l.samples, g.seed});
  o.ring = r.universal.complex.ring.descriptor();
  o.result = resonance_json(r);
  if (r.universal.exact) o.checks.emplace_back("locus_consistency", r.samples_consistent());
  return o;
}

Outcome run_dga_resonance(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  Outcome o;
  AInfAlgebra a = s.as_ainf();
  o.max_arity = top_arity(a.products);
  ResonanceResult r = dga_resonance_ideal(a, l.i, l.k, l.samples, g.seed);
  o.ring = r.universal.complex.ring.descriptor();
  o.result = resonance_json(r);
  o.checks.emplace_back("locus_consistency", r.samples_consistent());
  return o;
}

Outcome run_tangent_cone(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  Outcome o;
  TangentConeReport rep;
  if (s.kind == StructureKind::ainf) {
    rep = tangent_cone_check(s.as_ainf(), l.i, l.k, g.trunc);
    o.max_arity = rep.trunc + 1;
  } else {
    o.max_arity = g.max_arity;
    rep = tangent_cone_check(minimal_of(s, o.max_arity), l.i, l.k, g.trunc);
  }
  o.ring = rep.ring;
  const Ring r = Ring::parse(rep.ring);
  o.result["i"] = rep.i;
  o.result["k"] = rep.k;
  o.result["s"] = rep.s;
  o.result["trunc"] = rep.trunc;
  o.result["minors"] = rep.minors;
  o.result["nonzero_linear_minors"] = rep.nonzero_linear;
  o.result["mismatches"] = rep.mismatches;
  o.result["linear_ideal"] = to_json(r, rep.linear_ideal);
  o.result["initial_forms"] = to_json(r, rep.initial_forms);
  o.checks.emplace_back("minor_correspondence", rep.passed());
  return o;
}

Outcome run_subtorus(const Global& g, const Local& l) {
  StructurePackage s = load(l);
  Outcome o;
  o.max_arity = g.max_arity;
  LInfPair p = minimal_of(s, o.max_arity);
  SubtorusReport rep = subtorus_hypothesis_check(p);
  const VanishingBound& b = rep.bound;
  o.result["weights_ok"] = b.weights_ok;
  o.result["offenders"] = b.offenders;
  o.result["n0"] = b.n0 ? Json(*b.n0) : Json(nullptr);
  o.result["theoretical"] = b.theoretical;
  o.result["empirical"] = b.empirical;
  o.result["scanned_arity"] = b.scanned_arity;
  o.result["deligne_range"] = b.deligne_range;
  o.result["violations"] = b.violations;
  o.result["exact_mode"] = rep.exact_n0.has_value();
  o.checks.emplace_back("hypothesis_certified", rep.certified);
  return o;
}

Outcome run_fixture(const Global& g, const Local& l) {
  FixtureDescriptor d;
  d.recipe = l.recipe;
  d.n = l.n;
  d.seed = g.seed;
  d.dims = l.dims;
  d.weighted = !l.unweighted;
  d.form = l.form;
  if (g.max_arity > 0) d.max_arity = g.max_arity;
  Outcome o;
  try {
    o.result = to_json(generate_fixture(d));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  o.raw = true;
  return o;
}

void render_text(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t n = 0; n < j.size(); ++n) render_text(j[n], path + "[" + std::to_string(n) + "]", out);
  } else {
    out << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path target(g.out);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot write " + tmp.string());
    f << text;
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homotopy transfer, deformation and resonance computations"};
  app.fallthrough();
  app.require_subcommand(1);
  Global g;
  Local l;
  app.add_option("--seed", g.seed, "Seed for sampling and random fixtures");
  app.add_option("--max-arity", g.max_arity, "Largest arity computed or checked (0: default)");
  app.add_option("--ring", g.ring, "Coefficient ring descriptor");
  app.add_option("--trunc", g.trunc, "Truncation degree for universal complexes");
  app.add_option("--out", g.out, "Write the output to a file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  using Handler = Outcome (*)(const Global&, const Local&);
  std::vector<std::pair<CLI::App*, Handler>> subs;
  auto sub = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    subs.emplace_back(s, h);
    return s;
  };
  auto file = [&](CLI::App* s) { s->add_option("file", l.file, "Structure JSON")->required(); };
  auto ik = [&](CLI::App* s) {
    s->add_option("--i", l.i, "Cohomological degree")->required();
    s->add_option("--k", l.k, "Jump threshold")->required();
  };

  CLI::App* check = sub("check", "Verify structure identities", run_check);
  file(check);
  check->add_option("--identities", l.identities, "stasheff, jacobi, module")->delimiter(',');
  file(sub("cohomology", "Cohomology of the underlying complexes", run_cohomology));
  CLI::App* transfer = sub("transfer", "Transfer to cohomology", run_transfer);
  file(transfer);
  transfer->add_option("--emit", l.emit)->check(CLI::IsMember({"structure", "morphisms", "all"}));
  transfer->add_option("--weights", l.weights)->check(CLI::IsMember({"require", "ignore"}));
  CLI::App* mc = sub("mc-check", "Maurer-Cartan equation", run_mc_check);
  file(mc);
  mc->add_option("--mc", l.mc, "MC element JSON")->required();
  CLI::App* twist = sub("twist", "Twisted complex of a pair", run_twist);
  file(twist);
  twist->add_option("--mc", l.mc, "MC element JSON")->required();
  CLI::App* jump = sub("jump-ideal", "Cohomology jump ideal", run_jump_ideal);
  file(jump);
  ik(jump);
  jump->add_option("--mc", l.mc, "MC element JSON (default 0)");
  CLI::App* tangent = sub("tangent-space", "Tangent space of the jump functor", run_tangent_space);
  file(tangent);
  ik(tangent);
  CLI::App* res = sub("resonance", "Resonance ideal of a minimal pair", run_resonance);
  file(res);
  ik(res);
  res->add_flag("--exact", l.exact, "Use the certified vanishing bound");
  res->add_option("--samples", l.samples, "Sample points for the rank oracle");
  CLI::App* dres = sub("dga-resonance", "Resonance ideal of a finite dga", run_dga_resonance);
  file(dres);
  ik(dres);
  dres->add_option("--samples", l.samples, "Sample points for the rank oracle");
  CLI::App* cone = sub("tangent-cone", "Tangent-cone minor correspondence", run_tangent_cone);
  file(cone);
  ik(cone);
  file(sub("subtorus-check", "Vanishing-bound hypothesis", run_subtorus));
  CLI::App* fix = sub("fixture", "Generate a fixture", run_fixture);
  fix->add_option("recipe", l.recipe, "exterior, heisenberg, torus2, weight0, random, random-cdga")->required();
  fix->add_option("--n", l.n, "Generators (exterior) or maximal dimension (random-cdga)");
  fix->add_option("--dims", l.dims, "Dimensions per degree (random)")->delimiter(',');
  fix->add_option("--form", l.form)->check(CLI::IsMember({"algebra", "regular-pair", "minimal-pair"}));
  fix->add_flag("--unweighted", l.unweighted);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  for (const auto& [s, handler] : subs) {
    if (!s->parsed()) continue;
    Outcome o;
    try {
      o = handler(g, l);
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << "\n" << s->help();
      return 2;
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    try {
      if (o.raw) {
        emit(g, g.format == "json" ? dump(o.result) : [&] {
          std::ostringstream t;
          render_text(o.result, "", t);
          return t.str();
        }());
        return 0;
      }
      bool pass = !o.error;
      for (const auto& [name, ok] : o.checks) pass = pass && ok;
      Json config;
      config["seed"] = g.seed;
      config["max_arity_flag"] = g.max_arity;
      config["ring_flag"] = g.ring;
      config["trunc"] = g.trunc ? Json(*g.trunc) : Json(nullptr);
      config["i"] = l.i;
      config["k"] = l.k;
      Json args = Json::array();
      for (int a = 1; a < argc; ++a) args.push_back(argv[a]);
      Json rep;
      rep["command"] = s->get_name();
      rep["args"] = args;
      rep["config"] = config;
      rep["config_hash"] = fnv1a(s->get_name() + config.dump() + args.dump() + (l.file.empty() ? "" : read_file(l.file)));
      rep["ring"] = o.ring;
      rep["max_arity"] = o.max_arity;
      rep["status"] = pass ? "pass" : "fail";
      Json checks = Json::array();
      for (const auto& [name, ok] : o.checks) checks.push_back(Json{{"name", name}, {"passed", ok}});
      rep["checks"] = std::move(checks);
      if (o.error) rep["error"] = *o.error;
      rep["result"] = std::move(o.result);
      if (g.format == "json") {
        emit(g, dump(rep));
      } else {
        std::ostringstream t;
        render_text(rep, "", t);
        emit(g, t.str());
      }
      return pass ? 0 : 1;
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
