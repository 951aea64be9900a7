#pragma once

#include <Eigen/Dense>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcsym/rational.hpp"

namespace dcsym {

using RealMatrix = Eigen::MatrixXd;

/// Structure constants c_ij^k of a Lie algebra, [X_i, X_j] = c_ij^k X_k.
/// Indices are 1-based, matching the usual notation for a basis X_1..X_N.
class StructureConstants {
 public:
  using Triple = std::array<int, 3>;

  explicit StructureConstants(int dim);

  int dim() const { return dim_; }

  /// Sets c_ijk and its antisymmetric partner c_jik = -c_ijk.
  void set_bracket(int i, int j, int k, const Rational& value);
  /// Sets a single entry without touching its partner (used for loading raw data).
  void set_raw(int i, int j, int k, const Rational& value);

  Rational operator()(int i, int j, int k) const;
  const std::map<Triple, Rational>& entries() const { return entries_; }
  bool is_abelian() const { return entries_.empty(); }

  std::string name;

 private:
  void check_index(int i, int j, int k) const;
  int dim_;
  std::map<Triple, Rational> entries_;
};

struct AlgebraViolation {
  enum class Kind { Antisymmetry, Jacobi } kind;
  std::vector<int> indices;  // (i,j,k) for antisymmetry, (i,j,k,l) for Jacobi
  Rational value;            // offending sum
  std::string describe() const;
};

/// Lists violated antisymmetry and Jacobi identities; empty when valid.
std::vector<AlgebraViolation> validate_algebra(const StructureConstants& sc);

/// Matrix M of ad(X_j) in the row convention M(i,k) = c_jik, so that row i
/// holds the coefficients of [X_j, X_i]. Result is 0-based.
RationalMatrix ad_matrix(const StructureConstants& sc, int j);

/// Smallest m with ad(X_j)^m = 0, or nullopt when ad(X_j) is not nilpotent.
std::optional<int> nilpotency_index(const StructureConstants& sc, int j);

struct AdjointActionMatrix {
  int generator = 0;  // 1-based j
  double parameter = 0;
  RealMatrix matrix;
  /// Present when ad(X_j) is nilpotent and the parameter was given exactly.
  std::optional<RationalMatrix> exact;
};

/// A(j, eps): row i holds the coefficients of Ad(exp(eps X_j)) X_i, i.e.
/// X_i - eps [X_j, X_i] + eps^2/2 [X_j, [X_j, X_i]] - ...  = exp(-eps M).
AdjointActionMatrix adjoint_exp(const StructureConstants& sc, int j, double eps);

/// Exact variant; requires ad(X_j) to be nilpotent.
AdjointActionMatrix adjoint_exp_exact(const StructureConstants& sc, int j, const Rational& eps);

/// Numeric matrix exponential exp(-eps M) regardless of nilpotency.
RealMatrix adjoint_exp_numeric(const StructureConstants& sc, int j, double eps);

/// Inner reduction B -> A B; rejects singular B.
RealMatrix apply_reduction(const RealMatrix& b, const AdjointActionMatrix& a);
RationalMatrix apply_reduction(const RationalMatrix& b, const AdjointActionMatrix& a);

RealMatrix to_real(const RationalMatrix& m);

}  // namespace dcsym
