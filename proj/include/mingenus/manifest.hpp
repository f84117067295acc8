#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mingenus/charvec_search.hpp"
#include "mingenus/constructions.hpp"
#include "mingenus/errors.hpp"
#include "mingenus/lattice.hpp"

namespace mingenus {

/// Malformed manifest: bad JSON, wrong types, non-integer numbers, unknown
/// class names, or a Gram matrix the lattice constructor rejects.
class SchemaError : public Error {
 public:
  using Error::Error;
};

struct ManifestFlags {
  bool h1_zero = false;
  std::vector<std::string> sphere_hypotheses;
  bool rational_surface = false;
  friend bool operator==(const ManifestFlags&, const ManifestFlags&) = default;
};

struct BudgetOverrides {
  std::optional<std::uint64_t> max_nodes;
  std::optional<Int> max_abs_pairing;
  friend bool operator==(const BudgetOverrides&, const BudgetOverrides&) = default;
};

struct PlanSpec {
  std::vector<SurfaceComponent> components;
  IntMatrix intersections;
};

/// Input file of the command-line tool:
///
///   {
///     "gram": [[0, 1], [1, 0]],
///     "classes": {"xi": [3, 2]},
///     "flags": {"h1_zero": false, "sphere_hypotheses": [], "rational_surface": false},
///     "budget": {"max_nodes": 2000000, "max_abs_pairing": 100},
///     "plans": {"name": {"components": [{"genus": 0, "multiplicity": 2}], "intersections": [[1]]}}
///   }
///
/// Only "gram" is required. Numbers must be integers; values beyond 64 bits
/// may be written as decimal strings.
struct Manifest {
  IntMatrix gram;
  std::map<std::string, ClassVector> classes;
  ManifestFlags flags;
  BudgetOverrides budget;
  std::map<std::string, PlanSpec> plans;

  Lattice lattice() const;
  const ClassVector& class_named(const std::string& name) const;
  ConstructionPlan plan_named(const std::string& name) const;
};

/// Throws SchemaError with the offending location.
Manifest parse_manifest(const std::string& text);
nlohmann::json manifest_to_json(const Manifest& m);
std::string serialize_manifest(const Manifest& m);

nlohmann::json int_to_json(const Int& v);
nlohmann::json vector_to_json(const ClassVector& v);

}  // namespace mingenus
