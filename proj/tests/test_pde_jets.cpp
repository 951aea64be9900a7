#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "dcsym/pde_jets.hpp"

using namespace dcsym;

namespace {

const JetLayout kPde = JetLayout::pde();

PdeContactMap g1() { return ContactMap::parse("G1", kPde, {"t", "-x", "-u", "-ut", "ux"}); }
PdeContactMap g2() { return ContactMap::parse("G2", kPde, {"t + ln(abs(ux))", "u + ut", "x + ut/ux", "-ut/ux", "1/ux"}); }
PdeContactMap g2_swapped() {
  return ContactMap::parse("G2s", kPde, {"t + ln(abs(ux))", "x + ut/ux", "u + ut", "-ut/ux", "1/ux"});
}

std::vector<GeneratorSpec> heat_generators() {
  return {GeneratorSpec::from_coefficients("X1", kPde, {"1", "0", "0", "0", "0"}),
          GeneratorSpec::from_coefficients("X2", kPde, {"0", "1", "0", "0", "0"}),
          GeneratorSpec::from_coefficients("X3", kPde, {"0", "0", "1", "0", "0"}),
          GeneratorSpec::from_coefficients("X4", kPde, {"0", "0", "exp(-t)", "-exp(-t)", "0"}),
          GeneratorSpec::from_coefficients("X5", kPde, {"0", "-x", "u", "ut", "2*ux"})};
}

// surface u = 2x + x^2/2 + 0.3 sin(t) x + t^2/2 + x t^2/4, with ux > 0 near the origin
double su(double t, double x) { return 2 * x + x * x / 2 + 0.3 * std::sin(t) * x + t * t / 2 + x * t * t / 4; }
double sut(double t, double x) { return 0.3 * std::cos(t) * x + t + x * t / 2; }
double sux(double t, double x) { return 2 + x + 0.3 * std::sin(t) + t * t / 4; }
double sutt(double t, double x) { return -0.3 * std::sin(t) * x + 1 + x / 2; }
double sutx(double t, double) { return 0.3 * std::cos(t) + t / 2; }
double suxx(double, double) { return 1; }

PdeJetPoint surface_jet(double t, double x) {
  return {t, x, su(t, x), sut(t, x), sux(t, x), sutt(t, x), sutx(t, x), suxx(t, x)};
}

std::vector<double> image(const PdeContactMap& m, double t, double x) {
  const std::vector<Complex> z{t, x, su(t, x), sut(t, x), sux(t, x)};
  std::vector<double> out;
  for (const auto& c : m.evaluate<Complex>(std::span<const Complex>(z))) out.push_back(c.real());
  return out;
}

// gradient of f with respect to the hatted coordinates, by central
// differences in (t, x) and the chain rule through (t-hat, x-hat)
template <class F>
Eigen::Vector2d hat_gradient(const PdeContactMap& m, F f, double t, double x, double h) {
  auto dt = [&](auto g) { return (g(t + h, x) - g(t - h, x)) / (2 * h); };
  auto dx = [&](auto g) { return (g(t, x + h) - g(t, x - h)) / (2 * h); };
  auto T = [&](double a, double b) { return image(m, a, b)[0]; };
  auto X = [&](double a, double b) { return image(m, a, b)[1]; };
  Eigen::Matrix2d j;
  j << dt(T), dt(X), dx(T), dx(X);
  const Eigen::Vector2d df(dt(f), dx(f));
  return j.fullPivLu().solve(df);
}

}  // namespace

TEST_CASE("reflection prolongs to (-utt, utx, -uxx)") {
  const PdeJetPoint jp{0.2, -0.4, 0.7, 0.3, 1.1, -0.8, 0.5, 1.6};
  const auto r = pde_prolong(g1(), jp);
  CHECK(r.utt == doctest::Approx(0.8));
  CHECK(r.utx == doctest::Approx(0.5));
  CHECK(r.uxx == doctest::Approx(-1.6));
  CHECK(r.ut == doctest::Approx(-0.3));
  CHECK(r.ux == doctest::Approx(1.1));
  CHECK(r.mixed_mismatch < 1e-14);
}

TEST_CASE("prolongation agrees with the finite-difference chain rule") {
  for (const auto& m : {g1(), g2()})
    for (const auto& [t0, x0] : {std::pair{0.4, 0.3}, std::pair{-0.5, 0.8}, std::pair{1.0, -0.6}}) {
      CAPTURE(m.label);
      CAPTURE(t0);
      const auto r = pde_prolong(m, surface_jet(t0, x0));
      const double h = 1e-4;
      auto U = [&](double a, double b) { return image(m, a, b)[2]; };
      const Eigen::Vector2d first = hat_gradient(m, U, t0, x0, h);
      CHECK(std::abs(first(0) - r.ut) < 1e-6 * (1 + std::abs(r.ut)));
      CHECK(std::abs(first(1) - r.ux) < 1e-6 * (1 + std::abs(r.ux)));
      // second derivatives from the finite-difference first derivatives
      auto Ut = [&](double a, double b) { return hat_gradient(m, U, a, b, h)(0); };
      auto Ux = [&](double a, double b) { return hat_gradient(m, U, a, b, h)(1); };
      const double h2 = 1e-2;
      const Eigen::Vector2d row_t = hat_gradient(m, Ut, t0, x0, h2);
      const Eigen::Vector2d row_x = hat_gradient(m, Ux, t0, x0, h2);
      const double tol = 1e-3;
      CHECK(std::abs(row_t(0) - r.utt) < tol * (1 + std::abs(r.utt)));
      CHECK(std::abs(row_t(1) - r.utx) < tol * (1 + std::abs(r.utx)));
      CHECK(std::abs(row_x(0) - r.utx) < tol * (1 + std::abs(r.utx)));
      CHECK(std::abs(row_x(1) - r.uxx) < tol * (1 + std::abs(r.uxx)));
    }
}

TEST_CASE("contact condition for the heat-type maps") {
  SampleOptions opts;
  opts.tolerance = 1e-9;
  CHECK(pde_contact_residual(g1(), opts).pass);
  CHECK(pde_contact_residual(g2(), opts).pass);
  CHECK(pde_contact_residual(ContactMap::identity(kPde), opts).pass);
  const auto swapped = pde_contact_residual(g2_swapped(), opts);
  CHECK_FALSE(swapped.pass);
  CHECK(swapped.max_residual > 1e-3);
}

TEST_CASE("discrete symmetries of the equation") {
  const auto pde = PdeSpec::parse("uxx/ux - ut");
  SampleOptions opts;
  opts.tolerance = 1e-9;
  CHECK(pde_symmetry_residual(pde, g1(), opts).pass);
  CHECK(pde_symmetry_residual(pde, g2(), opts).pass);
  CHECK_FALSE(pde_symmetry_residual(pde, g1().perturbed(3, Rational(1, 100)), opts).pass);
  const auto other = PdeSpec::parse("uxx - ut");
  CHECK_FALSE(pde_symmetry_residual(other, g2(), opts).pass);
}

TEST_CASE("determining equations for the heat-type maps") {
  SampleOptions opts;
  opts.tolerance = 1e-9;
  RealMatrix b1 = RealMatrix::Identity(5, 5);
  b1(1, 1) = b1(2, 2) = b1(3, 3) = -1;
  CHECK(pde_determining_residual(heat_generators(), b1, g1(), opts).pass);
  RealMatrix b2(5, 5);
  b2 << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 2, 0, 0, 0, -1;
  CHECK(pde_determining_residual(heat_generators(), b2, g2(), opts).pass);
  CHECK_FALSE(pde_determining_residual(heat_generators(), b1, g2(), opts).pass);
  CHECK_FALSE(pde_determining_residual(heat_generators(), RealMatrix::Identity(5, 5), g1(), opts).pass);
}

TEST_CASE("heat generators close on their algebra") {
  StructureConstants sc(5);
  sc.set_bracket(1, 4, 4, -1);
  sc.set_bracket(2, 5, 2, -1);
  sc.set_bracket(3, 5, 3, 1);
  sc.set_bracket(4, 5, 4, 1);
  SampleOptions opts;
  opts.tolerance = 1e-10;
  CHECK(commutator_check(heat_generators(), sc, opts).pass);
}

TEST_CASE("sampling box") {
  const auto d = pde_domain();
  for (int i = 0; i < 100; ++i) {
    const auto z = draw_sample(d, 3, i, 0);
    CHECK(z[4].real() >= 0.1);
    for (const auto& c : z) CHECK(std::abs(c.real()) <= 2.0);
  }
}
