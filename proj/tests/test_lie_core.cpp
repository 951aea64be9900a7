#include <doctest.h>

#include <random>

#include "dcsym/lie_core.hpp"

using namespace dcsym;

namespace {

StructureConstants heat5() {
  StructureConstants sc(5);
  sc.set_bracket(1, 4, 4, -1);
  sc.set_bracket(2, 5, 2, -1);
  sc.set_bracket(3, 5, 3, 1);
  sc.set_bracket(4, 5, 4, 1);
  return sc;
}

StructureConstants so3() {
  StructureConstants sc(3);
  sc.set_bracket(1, 2, 3, 1);
  sc.set_bracket(2, 3, 1, 1);
  sc.set_bracket(3, 1, 2, 1);
  return sc;
}

// Jacobi sums computed straight from the definition.
bool jacobi_holds(const StructureConstants& sc) {
  const int n = sc.dim();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int l = 1; l <= n; ++l)
        for (int m = 1; m <= n; ++m) {
          Rational s = 0;
          for (int k = 1; k <= n; ++k)
            s += sc(i, j, k) * sc(k, l, m) + sc(j, l, k) * sc(k, i, m) + sc(l, i, k) * sc(k, j, m);
          if (s != 0) return false;
        }
  return true;
}

}  // namespace

TEST_CASE("structure constants are antisymmetric by construction") {
  StructureConstants sc(2);
  sc.set_bracket(1, 2, 1, 1);
  CHECK(sc(1, 2, 1) == 1);
  CHECK(sc(2, 1, 1) == -1);
  CHECK(sc(1, 1, 1) == 0);
  CHECK(validate_algebra(sc).empty());
}

TEST_CASE("raw entries that break antisymmetry are reported") {
  StructureConstants sc(2);
  sc.set_raw(1, 2, 1, 1);
  const auto v = validate_algebra(sc);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().kind == AlgebraViolation::Kind::Antisymmetry);
}

TEST_CASE("index range is checked") {
  StructureConstants sc(2);
  CHECK_THROWS(sc.set_bracket(1, 3, 1, 1));
}

TEST_CASE("validate_algebra agrees with a brute-force Jacobi check") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coeff(-1, 1);
  int valid = 0, invalid = 0;
  for (int trial = 0; trial < 300; ++trial) {
    StructureConstants sc(3);
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) {
          const int c = trial % 3 == 0 ? coeff(rng) * (coeff(rng) == 0) : coeff(rng);
          if (c != 0) sc.set_bracket(i, j, k, c);
        }
    const bool oracle = jacobi_holds(sc);
    CHECK(validate_algebra(sc).empty() == oracle);
    (oracle ? valid : invalid)++;
  }
  CHECK(valid > 10);
  CHECK(invalid > 10);
}

TEST_CASE("known algebras satisfy Jacobi") {
  CHECK(validate_algebra(so3()).empty());
  CHECK(validate_algebra(heat5()).empty());
  CHECK(jacobi_holds(heat5()));
}

TEST_CASE("ad matrix rows hold [X_j, X_i]") {
  const auto sc = so3();
  const RationalMatrix m = ad_matrix(sc, 1);
  // [X1, X2] = X3, [X1, X3] = -X2
  CHECK(m(1, 2) == 1);
  CHECK(m(2, 1) == -1);
  CHECK(m(0, 0) == 0);
  CHECK(m(1, 1) == 0);
}

TEST_CASE("nilpotency index") {
  StructureConstants a1(2);
  a1.set_bracket(1, 2, 1, 1);
  CHECK(nilpotency_index(a1, 1) == 2);
  CHECK_FALSE(nilpotency_index(a1, 2).has_value());
  CHECK(nilpotency_index(heat5(), 4) == 2);
  CHECK_FALSE(nilpotency_index(heat5(), 5).has_value());
}

TEST_CASE("adjoint action of a(1) matches the closed forms") {
  StructureConstants a1(2);
  a1.set_bracket(1, 2, 1, 1);
  const Rational eps(3, 7);
  const auto a = adjoint_exp_exact(a1, 1, eps);
  REQUIRE(a.exact.has_value());
  CHECK((*a.exact)(0, 0) == 1);
  CHECK((*a.exact)(0, 1) == 0);
  CHECK((*a.exact)(1, 0) == -eps);
  CHECK((*a.exact)(1, 1) == 1);

  const double e2 = 0.37;
  const RealMatrix a2 = adjoint_exp(a1, 2, e2).matrix;
  CHECK(a2(0, 0) == doctest::Approx(std::exp(e2)).epsilon(1e-14));
  CHECK(a2(0, 1) == doctest::Approx(0.0));
  CHECK(a2(1, 0) == doctest::Approx(0.0));
  CHECK(a2(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("exact adjoint action needs a nilpotent generator") {
  StructureConstants a1(2);
  a1.set_bracket(1, 2, 1, 1);
  CHECK_THROWS(adjoint_exp_exact(a1, 2, Rational(1)));
}

TEST_CASE("numeric exponential matches a truncated series") {
  const auto sc = so3();
  const double eps = 0.4;
  const RealMatrix m = to_real(ad_matrix(sc, 2));
  RealMatrix series = RealMatrix::Identity(3, 3), term = RealMatrix::Identity(3, 3);
  for (int k = 1; k < 30; ++k) {
    term = term * (-eps * m) / k;
    series += term;
  }
  CHECK((adjoint_exp_numeric(sc, 2, eps) - series).cwiseAbs().maxCoeff() < 1e-13);
  // so(3) acts by rotations
  const RealMatrix a = adjoint_exp_numeric(sc, 2, eps);
  CHECK((a * a.transpose() - RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("reduction composes with the adjoint action") {
  const auto sc = heat5();
  RealMatrix b = RealMatrix::Identity(5, 5);
  const auto a = adjoint_exp(sc, 5, 0.3);
  CHECK((apply_reduction(b, a) - a.matrix).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS(apply_reduction(RealMatrix::Zero(5, 5), a));
}
