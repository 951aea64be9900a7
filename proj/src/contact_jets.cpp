#include "dcsym/contact_jets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dcsym {

std::vector<std::string> JetLayout::variables() const {
  std::vector<std::string> out(independent);
  out.push_back(dependent);
  out.insert(out.end(), derivatives.begin(), derivatives.end());
  return out;
}

namespace {

bool is_ode(const JetLayout& layout) { return layout.n_indep() == 1; }

std::vector<Expression> parse_components(const JetLayout& layout, const std::vector<std::string>& texts,
                                         const std::vector<std::string>& parameters, const std::string& what) {
  if (static_cast<int>(texts.size()) != layout.size())
    throw InputError(what + " needs " + std::to_string(layout.size()) + " components, got " + std::to_string(texts.size()));
  std::vector<Expression> out;
  for (const auto& t : texts) out.push_back(Expression::parse(t, layout.variables(), parameters));
  return out;
}

}  // namespace

ContactMap ContactMap::parse(const std::string& label, const JetLayout& layout, const std::vector<std::string>& components,
                             const std::vector<std::string>& parameters, const std::vector<std::string>& inverse) {
  ContactMap m;
  m.label = label;
  m.layout = layout;
  m.parameters = parameters;
  m.components = parse_components(layout, components, parameters, "map '" + label + "'");
  if (!inverse.empty()) m.inverse = parse_components(layout, inverse, parameters, "inverse of map '" + label + "'");
  return m;
}

ContactMap ContactMap::identity(const JetLayout& layout) {
  ContactMap m;
  m.label = "identity";
  m.layout = layout;
  const auto vars = layout.variables();
  for (int k = 0; k < layout.size(); ++k) m.components.push_back(Expression::variable(vars, k));
  m.inverse = m.components;
  return m;
}

ContactMap ContactMap::bind(const std::string& parameter, const Rational& value) const {
  ContactMap m = *this;
  for (auto& c : m.components) c = c.bind(parameter, value);
  for (auto& c : m.inverse) c = c.bind(parameter, value);
  m.parameters.erase(std::remove(m.parameters.begin(), m.parameters.end(), parameter), m.parameters.end());
  m.label = label + "[" + parameter + "=" + to_string(value) + "]";
  return m;
}

ContactMap ContactMap::perturbed(int component, const Rational& amount) const {
  ContactMap m = *this;
  auto& c = m.components.at(static_cast<size_t>(component));
  c = c + Expression::constant(c.variables(), amount);
  m.inverse.clear();
  m.label = label + "+perturbed";
  return m;
}

ContactMap compose(const ContactMap& a, const ContactMap& b) {
  if (a.layout.variables() != b.layout.variables()) throw InputError("cannot compose maps over different jet variables");
  for (const auto* m : {&a, &b})
    for (const auto& c : m->components)
      if (!c.free_parameters().empty())
        throw InputError("map '" + m->label + "' has unbound parameter " + c.free_parameters().front());
  ContactMap out;
  out.layout = a.layout;
  out.label = a.label + "*" + b.label;
  for (const auto& c : a.components) out.components.push_back(c.substitute(b.components));
  if (!a.inverse.empty() && !b.inverse.empty())
    for (const auto& c : b.inverse) out.inverse.push_back(c.substitute(a.inverse));
  return out;
}

ValueWithGradient eval_with_derivatives(const Expression& expr, std::span<const Complex> point, const std::vector<int>& wrt,
                                        const EvalContext& ctx) {
  ValueWithGradient out;
  out.gradient.resize(wrt.size());
  out.value = expr.evaluate<Complex>(point, ctx);
  for (size_t start = 0; start < wrt.size(); start += 5) {
    std::vector<Grad> seeded(point.begin(), point.end());
    for (size_t k = start; k < std::min(wrt.size(), start + 5); ++k)
      seeded.at(static_cast<size_t>(wrt[k])).d[k - start] = Complex(1.0);
    const Grad g = expr.evaluate<Grad>(seeded, ctx);
    for (size_t k = start; k < std::min(wrt.size(), start + 5); ++k) out.gradient[k] = g.d[k - start];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

template <class S>
std::vector<S> characteristic_coefficients(const Expression& q, const JetLayout& layout, std::span<const S> point,
                                           const EvalContext& ctx) {
  using D = Dual<S, 5>;
  const int n = layout.n_indep();
  std::vector<D> seeded;
  for (int k = 0; k < layout.size(); ++k) seeded.push_back(D::seed(point[static_cast<size_t>(k)], k));
  const D qv = q.evaluate<D>(seeded, ctx);
  std::vector<S> out(static_cast<size_t>(layout.size()));
  S eta = qv.v;
  for (int a = 0; a < n; ++a) {
    const S q_p = qv.d[static_cast<size_t>(n + 1 + a)];
    out[static_cast<size_t>(a)] = -q_p;
    eta = eta - point[static_cast<size_t>(n + 1 + a)] * q_p;
    out[static_cast<size_t>(n + 1 + a)] = qv.d[static_cast<size_t>(a)] + point[static_cast<size_t>(n + 1 + a)] * qv.d[static_cast<size_t>(n)];
  }
  out[static_cast<size_t>(n)] = eta;
  return out;
}

template <class S>
std::vector<S> generator_coefficients(const GeneratorSpec& g, std::span<const S> point, const EvalContext& ctx) {
  if (g.characteristic) return characteristic_coefficients<S>(*g.characteristic, g.layout, point, ctx);
  std::vector<S> out;
  for (const auto& c : g.coefficients) out.push_back(c.evaluate<S>(point, ctx));
  return out;
}

}  // namespace

GeneratorSpec GeneratorSpec::from_characteristic(const std::string& label, const JetLayout& layout, const std::string& q) {
  return characteristic_to_generator(label, layout, Expression::parse(q, layout.variables()));
}

GeneratorSpec GeneratorSpec::from_coefficients(const std::string& label, const JetLayout& layout,
                                               const std::vector<std::string>& coefficients) {
  GeneratorSpec g;
  g.label = label;
  g.layout = layout;
  g.coefficients = parse_components(layout, coefficients, {}, "generator '" + label + "'");
  return g;
}

GeneratorSpec characteristic_to_generator(const std::string& label, const JetLayout& layout, const Expression& q) {
  if (q.variables() != layout.variables()) throw InputError("characteristic must be over the jet variables");
  GeneratorSpec g;
  g.label = label;
  g.layout = layout;
  g.characteristic = q;
  return g;
}

std::vector<Complex> GeneratorSpec::coefficients_at(std::span<const Complex> point, const EvalContext& ctx) const {
  return generator_coefficients<Complex>(*this, point, ctx);
}

std::vector<Grad> GeneratorSpec::coefficients_with_gradient(std::span<const Complex> point, const EvalContext& ctx) const {
  std::vector<Grad> seeded;
  for (size_t k = 0; k < point.size(); ++k) seeded.push_back(Grad::seed(point[k], static_cast<int>(k)));
  return generator_coefficients<Grad>(*this, seeded, ctx);
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<Complex> draw_sample(const SampleDomain& domain, std::uint64_t seed, int index, int attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(attempt)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> out;
  for (int k = 0; k < domain.size; ++k) {
    if (domain.kind == SampleDomain::Kind::ComplexAnnulus) {
      const double r2 = domain.inner * domain.inner + unit(rng) * (domain.outer * domain.outer - domain.inner * domain.inner);
      const double theta = 2 * std::numbers::pi * unit(rng);
      out.push_back(std::polar(std::sqrt(r2), theta));
    } else {
      const auto [lo, hi] = domain.ranges[static_cast<size_t>(k)];
      out.emplace_back(lo + (hi - lo) * unit(rng), 0.0);
    }
  }
  return out;
}

VerificationReport run_check(const std::string& name, const SampleDomain& domain, const SampleOptions& options,
                             const std::function<double(std::span<const Complex>, const EvalContext&)>& residual) {
  VerificationReport report;
  report.check = name;
  report.sample_count = options.samples;
  report.tolerance = options.tolerance;
  EvalContext ctx;
  ctx.singular_threshold = options.singular_threshold;
  for (int i = 0; i < options.samples; ++i) {
    std::string reason;
    bool done = false;
    for (int attempt = 0; attempt <= options.max_resample && !done; ++attempt) {
      const auto point = draw_sample(domain, options.seed, i, attempt);
      try {
        const double r = residual(point, ctx);
        if (!std::isfinite(r)) {
          reason = "non-finite residual";
          break;
        }
        report.residuals.push_back(r);
        report.max_residual = std::max(report.max_residual, r);
        done = true;
      } catch (const SingularError& e) {
        reason = e.what();
      } catch (const EvalError& e) {
        reason = e.what();
        break;
      }
    }
    if (!done) report.skipped.push_back({i, reason});
  }
  const double skip_fraction = options.samples > 0 ? static_cast<double>(report.skipped.size()) / options.samples : 0.0;
  report.pass = !report.residuals.empty() && report.max_residual <= options.tolerance &&
                skip_fraction <= options.max_skip_fraction;
  return report;
}

SampleDomain ode_domain(int size) { return SampleDomain::annulus(size); }

namespace {

SampleDomain layout_domain(const JetLayout& layout) {
  if (is_ode(layout)) return ode_domain(layout.size());
  std::vector<std::pair<double, double>> ranges(static_cast<size_t>(layout.size()), {-2.0, 2.0});
  ranges.back() = {0.1, 2.0};
  return SampleDomain::box(ranges);
}

std::vector<Grad> seeded_point(std::span<const Complex> point) {
  std::vector<Grad> out;
  for (size_t k = 0; k < point.size(); ++k) out.push_back(Grad::seed(point[k], static_cast<int>(k)));
  return out;
}

void require_ode(const ContactMap& map) {
  if (!is_ode(map.layout)) throw InputError("map '" + map.label + "' is not an ODE jet map");
}

struct Prolonged {
  std::vector<Complex> jet;
  Complex consistency;  // D y-hat - p-hat D x-hat
};

Prolonged prolong_full(const ContactMap& map, const JetPoint& jp, int order, const EvalContext& ctx) {
  require_ode(map);
  const int n = static_cast<int>(jp.size()) - 2;
  if (n < 1 || order < 1 || order > n) throw InputError("jet point order too low for prolongation");
  using T = Taylor<Complex>;
  T x(order), y(order), p(order);
  x.c[0] = jp[0];
  x.c[1] = 1.0;
  double factorial = 1;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) factorial *= k;
    if (1 + k < static_cast<int>(jp.size())) y.c[static_cast<size_t>(k)] = jp[static_cast<size_t>(1 + k)] / factorial;
    if (2 + k < static_cast<int>(jp.size())) p.c[static_cast<size_t>(k)] = jp[static_cast<size_t>(2 + k)] / factorial;
  }
  const std::vector<T> point{x, y, p};
  const auto hat = map.evaluate<T>(point, ctx);
  const T dx = hat[0].derivative();
  if (std::abs(dx.c[0]) <= 1e-8) throw SingularError("total derivative of x-hat vanishes");
  Prolonged out;
  out.jet = {hat[0].c[0], hat[1].c[0], hat[2].c[0]};
  out.consistency = hat[1].derivative().c[0] - hat[2].c[0] * dx.c[0];
  T current = hat[2];
  for (int k = 2; k <= order; ++k) {
    current = current.derivative() / dx;
    out.jet.push_back(current.c[0]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ODE checks

std::vector<std::string> OdeSpec::jet_variables(int order) {
  std::vector<std::string> vars{"x", "y", "p"};
  for (int k = 2; k < order; ++k) vars.push_back("y" + std::to_string(k));
  return vars;
}

OdeSpec OdeSpec::parse(int order, const std::string& rhs) {
  if (order < 2) throw InputError("ODE order must be at least 2");
  return {order, Expression::parse(rhs, jet_variables(order))};
}

std::vector<Complex> prolong(const ContactMap& map, const JetPoint& jp, int order, const EvalContext& ctx) {
  return prolong_full(map, jp, order, ctx).jet;
}

VerificationReport contact_residual(const ContactMap& map, const SampleOptions& options) {
  require_ode(map);
  return run_check("contact", ode_domain(3), options, [&](std::span<const Complex> z, const EvalContext& ctx) {
    const auto g = map.evaluate<Grad>(seeded_point(z), ctx);
    const Complex p = z[2];
    const Complex ph = g[2].v;
    const double r1 = std::abs(g[1].d[0] + p * g[1].d[1] - (g[0].d[0] + p * g[0].d[1]) * ph);
    const double r2 = std::abs(g[1].d[2] - g[0].d[2] * ph);
    return std::max(r1, r2);
  });
}

VerificationReport symmetry_residual(const OdeSpec& ode, const ContactMap& map, const SampleOptions& options) {
  require_ode(map);
  const int n = ode.order;
  return run_check("symmetry", ode_domain(n + 1), options, [&](std::span<const Complex> z, const EvalContext& ctx) {
    JetPoint jp(z.begin(), z.end());
    jp.push_back(ode.rhs.evaluate<Complex>(z, ctx));
    const Prolonged pr = prolong_full(map, jp, n, ctx);
    const std::vector<Complex> hat_args(pr.jet.begin(), pr.jet.begin() + n + 1);
    const Complex expected = ode.rhs.evaluate<Complex>(hat_args, ctx);
    const Complex top = pr.jet[static_cast<size_t>(n + 1)];
    return std::max(std::abs(top - expected) / (1.0 + std::abs(top)), std::abs(pr.consistency));
  });
}

VerificationReport determining_residual(const std::vector<GeneratorSpec>& generators, const RealMatrix& b,
                                        const ContactMap& map, const SampleOptions& options) {
  const auto n = static_cast<Eigen::Index>(generators.size());
  if (b.rows() != n || b.cols() != n) throw InputError("B dimension does not match the number of generators");
  for (const auto& g : generators)
    if (g.layout.variables() != map.layout.variables()) throw InputError("generator and map use different jet variables");
  const int targets = map.layout.n_indep() + 1;
  return run_check("determining", layout_domain(map.layout), options, [&](std::span<const Complex> z, const EvalContext& ctx) {
    const auto g = map.evaluate<Grad>(seeded_point(z), ctx);
    std::vector<Complex> hat;
    for (const auto& c : g) hat.push_back(c.v);
    std::vector<std::vector<Complex>> at_hat;
    for (const auto& gen : generators) at_hat.push_back(gen.coefficients_at(hat, ctx));
    double worst = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto v = generators[static_cast<size_t>(i)].coefficients_at(z, ctx);
      for (int c = 0; c < targets; ++c) {
        Complex lhs = 0;
        for (size_t a = 0; a < v.size(); ++a) lhs += v[a] * g[static_cast<size_t>(c)].d[a];
        Complex rhs = 0;
        for (Eigen::Index l = 0; l < n; ++l) rhs += b(i, l) * at_hat[static_cast<size_t>(l)][static_cast<size_t>(c)];
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    return worst;
  });
}

VerificationReport commutator_check(const std::vector<GeneratorSpec>& generators, const StructureConstants& sc,
                                    const SampleOptions& options) {
  const int n = static_cast<int>(generators.size());
  if (n != sc.dim()) throw InputError("generator count does not match the algebra dimension");
  if (n == 0) throw InputError("no generators");
  const JetLayout layout = generators.front().layout;
  return run_check("commutator", layout_domain(layout), options, [&](std::span<const Complex> z, const EvalContext& ctx) {
    std::vector<std::vector<Grad>> g;
    for (const auto& gen : generators) g.push_back(gen.coefficients_with_gradient(z, ctx));
    const size_t m = z.size();
    double worst = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const auto& gi = g[static_cast<size_t>(i - 1)];
        const auto& gj = g[static_cast<size_t>(j - 1)];
        for (size_t c = 0; c < m; ++c) {
          Complex bracket = 0;
          for (size_t a = 0; a < m; ++a) bracket += gi[a].v * gj[c].d[a] - gj[a].v * gi[c].d[a];
          for (int k = 1; k <= n; ++k) {
            const Rational coeff = sc(i, j, k);
            if (coeff != 0) bracket -= coeff.get_d() * g[static_cast<size_t>(k - 1)][c].v;
          }
          worst = std::max(worst, std::abs(bracket));
        }
      }
    return worst;
  });
}

UniformityReport is_uniform(const ContactMap& map, const SampleOptions& options) {
  require_ode(map);
  SampleOptions opts = options;
  opts.tolerance = std::min(options.tolerance, 1e-9);
  std::optional<Complex> k;
  UniformityReport out;
  out.report = run_check("uniform", ode_domain(3), opts, [&](std::span<const Complex> z, const EvalContext& ctx) {
    const auto g = map.evaluate<Grad>(seeded_point(z), ctx);
    if (!k) k = g[1].d[1];
    return std::max({std::abs(g[0].d[1]), std::abs(g[2].d[1]), std::abs(g[1].d[1] - *k)});
  });
  out.k = k.value_or(Complex(0.0));
  if (std::abs(out.k) < 1e-9) {
    out.report.pass = false;
    out.report.note = "dy-hat/dy vanishes";
  }
  return out;
}

VerificationReport one_dim_compat_residual(const Expression& f, const Expression& h, double b, const SampleOptions& options) {
  return run_check("compatibility", ode_domain(2), options, [&](std::span<const Complex> z, const EvalContext& ctx) {
    const auto fv = eval_with_derivatives(f, z, {0, 1}, ctx);
    const auto hv = eval_with_derivatives(h, z, {0, 1}, ctx);
    return std::abs(fv.gradient[0] * hv.gradient[1] - fv.gradient[1] * hv.gradient[0] - b);
  });
}

}  // namespace dcsym
