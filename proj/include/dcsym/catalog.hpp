#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcsym/auto_solve.hpp"
#include "dcsym/contact_jets.hpp"
#include "dcsym/group_analysis.hpp"
#include "dcsym/pde_jets.hpp"

namespace dcsym {

/// Catalog files compiled into the library, keyed by path relative to the
/// catalog root ("manifest.json", "algebras/a1.alg", ...).
const std::map<std::string, std::string>& embedded_catalog_files();

/// Text of a file: embedded paths carry the prefix "catalog:", anything else
/// is read from disk.
std::string read_source(const std::string& path);

struct AlgebraSpec {
  std::string name;
  std::string source;
  StructureConstants sc{1};
  std::optional<Strategy> strategy;
  std::vector<BMatrixFamily> expected_canonical;
};

struct MapSpec {
  ContactMap map;
  std::string source;
  std::optional<RationalMatrix> b;
  /// Integer parameter and the values the catalog tests.
  std::string parameter;
  std::vector<Rational> instances;
  /// Registered candidate component lists; `chosen` is the one that passed
  /// the contact check at load time.
  std::vector<ContactMap> candidates;
  std::vector<double> candidate_residuals;
  int chosen = -1;

  /// Bound instances, or the map itself when it has no parameter.
  std::vector<ContactMap> instantiate() const;
};

struct EquationSpec {
  std::string name;
  std::string source;
  JetLayout layout;
  int order = 0;  // ODE only
  std::string rhs_text;
  std::optional<OdeSpec> ode;
  std::optional<PdeSpec> pde;
  std::vector<GeneratorSpec> generators;
  std::string algebra_ref;

  bool is_pde() const { return pde.has_value(); }
};

struct GroupExpectation {
  std::vector<std::string> generators;  // map labels, "G2[n=1]" binds a parameter
  int max_size = 64;
  std::optional<Fingerprint> fingerprint;
  bool unbounded = false;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  EquationSpec equation;
  AlgebraSpec algebra;
  std::vector<MapSpec> maps;
  std::optional<GroupExpectation> group;
  VerificationReport commutator;  // run at load time

  const MapSpec& map(const std::string& label) const;
  /// Resolves "G2[n=1]" style references.
  ContactMap group_generator(const std::string& ref) const;
};

std::vector<std::string> catalog_names();
std::vector<std::string> catalog_algebra_names();

/// Name of a bundled algebra ("a1") or a path to an .alg file.
AlgebraSpec load_algebra(const std::string& name_or_path);
/// Bundled strategy of an algebra, or a file holding a strategy object or an
/// algebra with one.
Strategy load_strategy(const std::string& name_or_path);
MapSpec load_map(const std::string& path);
EquationSpec load_equation(const std::string& path);
/// Name of a catalog entry or a path to an entry file with the manifest
/// entry layout. Throws InputError when a generator basis fails its
/// commutator check.
CatalogEntry load_catalog_entry(const std::string& name_or_path);

/// Map perturbed by +amount in its first-derivative slot.
ContactMap negative_control(const ContactMap& map, const Rational& amount);

}  // namespace dcsym
