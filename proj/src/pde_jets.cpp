#include "dcsym/pde_jets.hpp"

#include <algorithm>
#include <cmath>

namespace dcsym {

std::vector<std::string> PdeSpec::rhs_variables() { return {"t", "x", "u", "ut", "ux", "utx", "uxx"}; }

PdeSpec PdeSpec::parse(const std::string& rhs) { return {Expression::parse(rhs, rhs_variables())}; }

SampleDomain pde_domain() {
  return SampleDomain::box({{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}, {0.1, 2}, {-2, 2}, {-2, 2}, {-2, 2}});
}

namespace {

void require_pde(const ContactMap& map) {
  if (map.layout.variables() != JetLayout::pde().variables())
    throw InputError("map '" + map.label + "' is not a map of (t,x,u,ut,ux)");
}

struct TotalDerivatives {
  std::vector<Complex> hat;  // five components
  std::vector<Complex> dt, dx;
};

TotalDerivatives total_derivatives(const PdeContactMap& map, const PdeJetPoint& jp, const EvalContext& ctx) {
  const std::vector<Complex> z{jp.t, jp.x, jp.u, jp.ut, jp.ux};
  std::vector<Grad> seeded;
  for (int k = 0; k < 5; ++k) seeded.push_back(Grad::seed(z[static_cast<size_t>(k)], k));
  const auto g = map.evaluate<Grad>(seeded, ctx);
  TotalDerivatives out;
  for (const auto& c : g) {
    out.hat.push_back(c.v);
    out.dt.push_back(c.d[0] + jp.ut * c.d[2] + jp.utt * c.d[3] + jp.utx * c.d[4]);
    out.dx.push_back(c.d[1] + jp.ux * c.d[2] + jp.utx * c.d[3] + jp.uxx * c.d[4]);
  }
  return out;
}

double contact_terms(const TotalDerivatives& d) {
  const double r1 = std::abs(d.dt[2] - d.hat[3] * d.dt[0] - d.hat[4] * d.dt[1]);
  const double r2 = std::abs(d.dx[2] - d.hat[3] * d.dx[0] - d.hat[4] * d.dx[1]);
  return std::max(r1, r2);
}

PdeJetPoint jet_from(std::span<const Complex> z, size_t second) {
  PdeJetPoint jp;
  jp.t = z[0].real();
  jp.x = z[1].real();
  jp.u = z[2].real();
  jp.ut = z[3].real();
  jp.ux = z[4].real();
  jp.utt = z[second].real();
  jp.utx = z[second + 1].real();
  jp.uxx = z[second + 2].real();
  return jp;
}

PdeProlongation prolong_from(const TotalDerivatives& d) {
  const Complex a = d.dt[0], b = d.dt[1], c = d.dx[0], e = d.dx[1];
  const Complex det = a * e - b * c;
  if (std::abs(det) <= 1e-8) throw SingularError("total Jacobian of (t-hat, x-hat) is singular");
  auto solve = [&](const Complex& rt, const Complex& rx) {
    return std::pair<Complex, Complex>{(rt * e - b * rx) / det, (a * rx - c * rt) / det};
  };
  const auto [utt, utx] = solve(d.dt[3], d.dx[3]);
  const auto [uxt, uxx] = solve(d.dt[4], d.dx[4]);
  PdeProlongation out;
  out.t = d.hat[0].real();
  out.x = d.hat[1].real();
  out.u = d.hat[2].real();
  out.ut = d.hat[3].real();
  out.ux = d.hat[4].real();
  out.utt = utt.real();
  out.utx = utx.real();
  out.uxx = uxx.real();
  out.mixed_mismatch = std::abs(utx - uxt);
  return out;
}

}  // namespace

PdeProlongation pde_prolong(const PdeContactMap& map, const PdeJetPoint& jp, const EvalContext& ctx) {
  require_pde(map);
  return prolong_from(total_derivatives(map, jp, ctx));
}

VerificationReport pde_contact_residual(const PdeContactMap& map, const SampleOptions& options) {
  require_pde(map);
  SampleDomain domain = pde_domain();
  // A second, independent set of second derivatives.
  for (int k = 0; k < 3; ++k) domain.ranges.push_back({-2, 2});
  domain.size = static_cast<int>(domain.ranges.size());
  return run_check("pde-contact", domain, options, [&](std::span<const Complex> z, const EvalContext& ctx) {
    const double first = contact_terms(total_derivatives(map, jet_from(z, 5), ctx));
    const double second = contact_terms(total_derivatives(map, jet_from(z, 8), ctx));
    return std::max(first, second);
  });
}

VerificationReport pde_symmetry_residual(const PdeSpec& pde, const PdeContactMap& map, const SampleOptions& options) {
  require_pde(map);
  return run_check("pde-symmetry", pde_domain(), options, [&](std::span<const Complex> z, const EvalContext& ctx) {
    PdeJetPoint jp = jet_from(z, 5);
    const std::vector<Complex> args{jp.t, jp.x, jp.u, jp.ut, jp.ux, jp.utx, jp.uxx};
    jp.utt = pde.rhs.evaluate<Complex>(args, ctx).real();
    const TotalDerivatives d = total_derivatives(map, jp, ctx);
    const PdeProlongation pr = prolong_from(d);
    const std::vector<Complex> hat_args{pr.t, pr.x, pr.u, pr.ut, pr.ux, pr.utx, pr.uxx};
    const double expected = pde.rhs.evaluate<Complex>(hat_args, ctx).real();
    return std::max({std::abs(pr.utt - expected), pr.mixed_mismatch, contact_terms(d)});
  });
}

VerificationReport pde_determining_residual(const std::vector<GeneratorSpec>& generators, const RealMatrix& b,
                                            const PdeContactMap& map, const SampleOptions& options) {
  require_pde(map);
  return determining_residual(generators, b, map, options);
}

}  // namespace dcsym
