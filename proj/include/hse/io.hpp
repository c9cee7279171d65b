#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "hse/deformation.hpp"
#include "hse/structures.hpp"

namespace hse {

using Json = nlohmann::ordered_json;

enum class StructureKind { ainf, linf, module, pair };
std::string to_string(StructureKind k);
StructureKind parse_structure_kind(const std::string& s);

/// One structure as stored on disk. For modules and pairs `space` and `maps`
/// describe the module; the algebra is inline (pair) or loaded from
/// `algebra_ref`, a path relative to the referring file (module).
struct StructurePackage {
  StructureKind kind = StructureKind::ainf;
  GradedSpace space;
  MapFamily maps;
  std::optional<LInfAlgebra> algebra;
  std::optional<std::string> algebra_ref;

  AInfAlgebra as_ainf() const;
  LInfAlgebra as_linf() const;
  /// Pairs and modules as they are; an A-infinity algebra as its regular pair.
  LInfPair as_pair() const;
};

StructurePackage package(const AInfAlgebra& a);
StructurePackage package(const LInfAlgebra& l);
StructurePackage package(const LInfPair& p);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const GradedSpace& s);
GradedSpace space_from_json(const Json& j);

/// Entries list input labels slot by slot: from `in`, except the last slot
/// which comes from `last` when given.
Json to_json(const MultiMap& m, const GradedSpace& in, const GradedSpace& out, const GradedSpace* last = nullptr);
/// Fills `blank` (an empty map of the expected shape) and audits it: arity
/// and shift fields, labels, the degree of every entry and, when all spaces
/// carry weights, weight compatibility. Errors name the offending entry.
MultiMap multimap_from_json(const Json& j, MultiMap blank, const GradedSpace& in, const GradedSpace& out,
                            const GradedSpace* last = nullptr);

Json to_json(const StructurePackage& p);
/// Throws std::invalid_argument with element-level diagnostics.
StructurePackage parse_structure(const Json& j, const std::filesystem::path& base_dir = {});
StructurePackage load_structure(const std::filesystem::path& file);
/// Canonical text: two-space indentation and a trailing newline.
std::string serialize(const StructurePackage& p);
std::string dump(const Json& j);

Json to_json(const InfMorphism& f, const GradedSpace& src, const GradedSpace& dst, const GradedSpace* module_src = nullptr);
InfMorphism morphism_from_json(const Json& j, const GradedSpace& src, const GradedSpace& dst,
                               const GradedSpace* module_src = nullptr);

Json to_json(const Ring& r, const Ideal& i);
Ideal ideal_from_json(const Ring& r, const Json& j);

/// {label: ring element}
Json to_json(const Ring& r, const GradedSpace& s, const RingVec& v);
RingVec ring_vector_from_json(const Ring& r, const GradedSpace& s, const Json& j);

Json to_json(const Ring& r, const RingMatrix& m);

/// Generator recipe for the fixture library.
struct FixtureDescriptor {
  std::string recipe;       ///< exterior | heisenberg | torus2 | weight0 | random | random-cdga
  int n = 2;                ///< exterior: number of generators; random-cdga: max dimension
  std::uint64_t seed = 1;
  std::vector<int> dims;    ///< random: dimensions per degree from 0
  bool weighted = true;
  std::string form = "algebra";  ///< algebra | regular-pair | minimal-pair
  int max_arity = 5;             ///< minimal-pair: transfer arity
};

/// Deterministic for a fixed descriptor. Throws std::invalid_argument for
/// unknown recipes or unsatisfiable dimensions.
StructurePackage generate_fixture(const FixtureDescriptor& d);

/// Inputs and residuals are labelled with `space`.
Json to_json(const CheckReport& c, const GradedSpace& space);

}  // namespace hse
