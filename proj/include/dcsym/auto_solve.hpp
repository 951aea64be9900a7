#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcsym/lie_core.hpp"
#include "dcsym/polynomial.hpp"

namespace dcsym {

enum class ParamDomain { Real, NonZero, Sign, Integer };

std::string to_string(ParamDomain domain);
ParamDomain parse_domain(const std::string& text);

struct Parameter {
  std::string name;
  ParamDomain domain = ParamDomain::Real;
  bool operator==(const Parameter&) const = default;
};

/// Name of the unknown b_i^l (row i, column l, 1-based), e.g. "b21".
std::string entry_name(int row, int col);

/// Family of automorphism matrices. Each entry is a polynomial in the
/// declared parameters; a plain rational, a single parameter and a rational
/// multiple of a parameter are the common cases.
struct BMatrixFamily {
  int dim = 0;
  std::vector<Polynomial> entries;  // row-major, dim*dim
  std::vector<Parameter> parameters;
  /// Polynomials required to be nonzero beyond what parameter domains imply.
  std::vector<Polynomial> nonzero_conditions;

  const Polynomial& entry(int row, int col) const { return entries[static_cast<size_t>((row - 1) * dim + (col - 1))]; }
  Polynomial& entry(int row, int col) { return entries[static_cast<size_t>((row - 1) * dim + (col - 1))]; }

  std::optional<Parameter> parameter(const std::string& name) const;
  std::set<std::string> sign_parameters() const;
  std::set<std::string> parameter_names() const;

  RationalMatrix instantiate(const std::map<std::string, Rational>& values) const;
  /// Random admissible parameter values (signs +-1, nonzero values nonzero).
  std::map<std::string, Rational> random_instance(std::uint64_t seed) const;
  /// Zero pattern of the entries that are not identically zero.
  std::vector<bool> support() const;

  /// Determinant is not identically zero (evaluated at random points).
  bool generically_nonsingular(std::uint64_t seed = 7, int trials = 3) const;

  /// One-line bracket layout: [[alpha, 0], [0, 1]]; alpha in {-1,1}
  std::string to_string() const;
  /// Multi-line aligned bracket layout.
  std::string to_pretty_string() const;
};

/// Structural equality up to a bijective renaming of parameters of equal
/// domain (sign parameters may also flip sign).
bool equivalent_up_to_renaming(const BMatrixFamily& a, const BMatrixFamily& b);

/// Builds a family from entry strings such as {{"alpha","0"},{"0","1"}}.
BMatrixFamily make_family(const std::vector<std::vector<std::string>>& rows, const std::vector<Parameter>& parameters);

/// Whether some admissible parameter assignment reproduces `m` exactly.
bool family_contains(const BMatrixFamily& family, const RationalMatrix& m);

struct Constraint {
  Polynomial poly;  // = 0
  int i = 0, j = 0, n = 0;
};

struct ConstraintSystem {
  int dim = 0;
  std::vector<Constraint> equations;
  std::string to_string() const;
};

/// One equation sum_{l,m} c_lm^n b_il b_jm - sum_k c_ij^k b_kn = 0 per (i<j, n),
/// identically-zero equations dropped.
ConstraintSystem generate_constraints(const StructureConstants& sc);

/// Max absolute residual of the system at a numeric matrix.
double constraint_residual(const RealMatrix& b, const ConstraintSystem& sys);
Rational constraint_residual(const RationalMatrix& b, const ConstraintSystem& sys);

struct SolverOptions {
  std::size_t node_budget = 200000;
  std::uint64_t seed = 7;
};

/// Raised when the solver cannot finish; carries the families found so far.
class SolverIncomplete : public std::runtime_error {
 public:
  SolverIncomplete(const std::string& message, std::vector<BMatrixFamily> partial, std::vector<std::string> unresolved)
      : std::runtime_error(message), partial_(std::move(partial)), unresolved_(std::move(unresolved)) {}
  const std::vector<BMatrixFamily>& partial() const { return partial_; }
  const std::vector<std::string>& unresolved() const { return unresolved_; }

 private:
  std::vector<BMatrixFamily> partial_;
  std::vector<std::string> unresolved_;
};

/// Case-splitting solution of the automorphism constraints into families.
std::vector<BMatrixFamily> solve_families(const StructureConstants& sc, const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// Generic branch-and-substitute engine for small polynomial systems.

struct TaggedPolynomial {
  Polynomial poly;
  std::vector<int> tag;  // ordering key for tie-breaks
};

struct SolverLeaf {
  std::map<std::string, Polynomial> substitution;
  std::vector<Polynomial> nonzero;
  std::set<std::string> signs;
};

struct EngineResult {
  std::vector<SolverLeaf> leaves;
  std::vector<std::string> unresolved;
  bool budget_exhausted = false;
  std::size_t nodes = 0;
};

/// Propagates equations linear in one unknown, branches on zero/nonzero of
/// pivot factors and solves univariate quadratics; sign parameters s with
/// s^2 = 1 are introduced for square conditions.
EngineResult solve_polynomial_system(std::vector<TaggedPolynomial> equations, std::vector<Polynomial> nonzero,
                                     std::set<std::string> signs, std::size_t node_budget,
                                     const std::string& sign_prefix = "s");

// ---------------------------------------------------------------------------
// Canonicalization modulo inner automorphisms.

struct ReductionStep {
  int generator = 0;    // j, 1-based
  std::string epsilon;  // formula over entry names b11..bNN, e.g. "b21/b11" or "-ln(abs(b11))"
};

struct StrategyCase {
  std::vector<std::pair<int, int>> when_nonzero;  // entries that must not vanish identically
  std::vector<std::pair<int, int>> when_zero;     // entries that must vanish identically
  std::vector<ReductionStep> steps;
};

struct Strategy {
  std::string name;
  std::vector<StrategyCase> cases;
};

class StrategyError : public InputError {
 public:
  using InputError::InputError;
};

/// Applies B -> A(j, eps) B for each step of the first matching case, with
/// entries held symbolically; the result is simplified by parameter
/// absorption and renamed (signs alpha, beta, ...; others by position).
std::vector<BMatrixFamily> canonicalize(const StructureConstants& sc, const std::vector<BMatrixFamily>& families,
                                        const Strategy& strategy);

/// Best-effort automatic reduction: zero entries with nilpotent generators,
/// then rescale pivots to signs with diagonal generators.
BMatrixFamily canonicalize_greedy(const StructureConstants& sc, const BMatrixFamily& family);

/// Absorbs parameters that occur in a single entry into fresh parameters and
/// renames them; drops parameters that no longer occur.
BMatrixFamily simplify_parameters(const BMatrixFamily& family);

}  // namespace dcsym
