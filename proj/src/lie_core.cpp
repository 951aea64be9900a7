#include "dcsym/lie_core.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

namespace dcsym {

StructureConstants::StructureConstants(int dim) : dim_(dim) {
  if (dim < 1) throw InputError("algebra dimension must be at least 1");
}

void StructureConstants::check_index(int i, int j, int k) const {
  for (int idx : {i, j, k})
    if (idx < 1 || idx > dim_) {
      std::ostringstream os;
      os << "structure constant index (" << i << "," << j << "," << k << ") out of range 1.." << dim_;
      throw InputError(os.str());
    }
}

void StructureConstants::set_raw(int i, int j, int k, const Rational& value) {
  check_index(i, j, k);
  if (value == 0)
    entries_.erase({i, j, k});
  else
    entries_[{i, j, k}] = value;
}

void StructureConstants::set_bracket(int i, int j, int k, const Rational& value) {
  set_raw(i, j, k, value);
  set_raw(j, i, k, -value);
}

Rational StructureConstants::operator()(int i, int j, int k) const {
  check_index(i, j, k);
  auto it = entries_.find({i, j, k});
  return it == entries_.end() ? Rational(0) : it->second;
}

std::string AlgebraViolation::describe() const {
  std::ostringstream os;
  os << (kind == Kind::Antisymmetry ? "antisymmetry" : "jacobi") << " violated at (";
  for (size_t n = 0; n < indices.size(); ++n) os << (n ? "," : "") << indices[n];
  os << "): " << value.get_str();
  return os.str();
}

std::vector<AlgebraViolation> validate_algebra(const StructureConstants& sc) {
  std::vector<AlgebraViolation> out;
  const int n = sc.dim();
  for (const auto& [t, v] : sc.entries()) {
    const auto& [i, j, k] = t;
    Rational sum = v + sc(j, i, k);
    if (sum != 0 && (i < j || sc(j, i, k) == 0 || i == j))
      out.push_back({AlgebraViolation::Kind::Antisymmetry, {i, j, k}, sum});
  }
  // sum_m c_ijm c_mkl + c_jkm c_mil + c_kim c_mjl = 0
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          Rational sum = 0;
          for (int m = 1; m <= n; ++m) sum += sc(i, j, m) * sc(m, k, l) + sc(j, k, m) * sc(m, i, l) + sc(k, i, m) * sc(m, j, l);
          if (sum != 0) out.push_back({AlgebraViolation::Kind::Jacobi, {i, j, k, l}, sum});
        }
  return out;
}

RationalMatrix ad_matrix(const StructureConstants& sc, int j) {
  if (j < 1 || j > sc.dim()) throw InputError("generator index " + std::to_string(j) + " out of range");
  const int n = sc.dim();
  RationalMatrix m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) m(i - 1, k - 1) = sc(j, i, k);
  return m;
}

std::optional<int> nilpotency_index(const StructureConstants& sc, int j) {
  const RationalMatrix m = ad_matrix(sc, j);
  RationalMatrix power = RationalMatrix::identity(sc.dim());
  for (int e = 1; e <= sc.dim(); ++e) {
    power = power * m;
    if (power.is_zero()) return e;
  }
  return std::nullopt;
}

RealMatrix to_real(const RationalMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

RealMatrix adjoint_exp_numeric(const StructureConstants& sc, int j, double eps) {
  if (!std::isfinite(eps)) throw InputError("adjoint parameter must be finite");
  RealMatrix scaled = to_real(ad_matrix(sc, j)) * (-eps);
  return scaled.exp();
}

AdjointActionMatrix adjoint_exp_exact(const StructureConstants& sc, int j, const Rational& eps) {
  auto index = nilpotency_index(sc, j);
  if (!index) throw InputError("ad(X_" + std::to_string(j) + ") is not nilpotent; no exact series");
  const RationalMatrix step = ad_matrix(sc, j).scaled(-eps);
  RationalMatrix term = RationalMatrix::identity(sc.dim());
  RationalMatrix sum = term;
  for (int k = 1; k < *index; ++k) {
    term = (term * step).scaled(Rational(1, k));
    sum = sum + term;
  }
  AdjointActionMatrix out;
  out.generator = j;
  out.parameter = eps.get_d();
  out.matrix = to_real(sum);
  out.exact = std::move(sum);
  return out;
}

AdjointActionMatrix adjoint_exp(const StructureConstants& sc, int j, double eps) {
  if (!std::isfinite(eps)) throw InputError("adjoint parameter must be finite");
  if (nilpotency_index(sc, j)) {
    // Finite series evaluated in double; exact when eps is representable.
    AdjointActionMatrix out = adjoint_exp_exact(sc, j, Rational(eps));
    out.parameter = eps;
    return out;
  }
  AdjointActionMatrix out;
  out.generator = j;
  out.parameter = eps;
  out.matrix = adjoint_exp_numeric(sc, j, eps);
  return out;
}

RealMatrix apply_reduction(const RealMatrix& b, const AdjointActionMatrix& a) {
  if (b.rows() != b.cols() || b.rows() != a.matrix.rows()) throw InputError("dimension mismatch in reduction");
  Eigen::FullPivLU<RealMatrix> lu(b);
  if (!lu.isInvertible()) throw InputError("automorphism matrix B is singular");
  return a.matrix * b;
}

RationalMatrix apply_reduction(const RationalMatrix& b, const AdjointActionMatrix& a) {
  if (!a.exact) throw InputError("exact reduction needs an exact adjoint matrix");
  if (b.determinant() == 0) throw InputError("automorphism matrix B is singular");
  return *a.exact * b;
}

}  // namespace dcsym
