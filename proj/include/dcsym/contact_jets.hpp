#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dcsym/expression.hpp"
#include "dcsym/lie_core.hpp"

namespace dcsym {

/// Coordinates of first-order jet space: independent variables, the dependent
/// variable, then one first derivative per independent variable.
struct JetLayout {
  std::vector<std::string> independent;
  std::string dependent;
  std::vector<std::string> derivatives;

  static JetLayout ode() { return {{"x"}, "y", {"p"}}; }
  static JetLayout pde() { return {{"t", "x"}, "u", {"ut", "ux"}}; }

  int n_indep() const { return static_cast<int>(independent.size()); }
  int size() const { return 2 * n_indep() + 1; }
  std::vector<std::string> variables() const;
};

/// Map of first-order jet space given by one expression per coordinate.
struct ContactMap {
  std::string label;
  JetLayout layout;
  std::vector<Expression> components;
  std::vector<Expression> inverse;  // empty when not declared
  std::vector<std::string> parameters;

  static ContactMap parse(const std::string& label, const JetLayout& layout, const std::vector<std::string>& components,
                          const std::vector<std::string>& parameters = {},
                          const std::vector<std::string>& inverse = {});
  static ContactMap identity(const JetLayout& layout);

  /// Fixes an integer-valued parameter.
  ContactMap bind(const std::string& parameter, const Rational& value) const;
  /// Adds a constant to one component.
  ContactMap perturbed(int component, const Rational& amount) const;

  template <class S>
  std::vector<S> evaluate(std::span<const S> point, const EvalContext& ctx = {}) const {
    std::vector<S> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(c.evaluate<S>(point, ctx));
    return out;
  }
};

/// a o b: b applied first.
ContactMap compose(const ContactMap& a, const ContactMap& b);

using JetPoint = std::vector<Complex>;  // ODE: x, y, y', y'', ..., y^(n)

/// Value and first partials of an expression.
struct ValueWithGradient {
  Complex value;
  std::vector<Complex> gradient;  // one per requested variable
};

ValueWithGradient eval_with_derivatives(const Expression& expr, std::span<const Complex> point,
                                        const std::vector<int>& wrt, const EvalContext& ctx = {});

using Grad = Dual<Complex, 5>;

/// Contact vector field, either from a characteristic function Q or from
/// explicit coefficients (one per jet coordinate).
struct GeneratorSpec {
  std::string label;
  JetLayout layout;
  std::optional<Expression> characteristic;
  std::vector<Expression> coefficients;

  static GeneratorSpec from_characteristic(const std::string& label, const JetLayout& layout, const std::string& q);
  static GeneratorSpec from_coefficients(const std::string& label, const JetLayout& layout,
                                         const std::vector<std::string>& coefficients);

  /// Coefficients at a point (complex values).
  std::vector<Complex> coefficients_at(std::span<const Complex> point, const EvalContext& ctx = {}) const;
  /// Coefficients with their first partials.
  std::vector<Grad> coefficients_with_gradient(std::span<const Complex> point, const EvalContext& ctx = {}) const;
};

/// Generator from a characteristic: xi_a = -Q_{p_a}, eta = Q - p_a Q_{p_a},
/// eta_a = Q_{x_a} + p_a Q_u (coefficients exposed through GeneratorSpec).
GeneratorSpec characteristic_to_generator(const std::string& label, const JetLayout& layout, const Expression& q);

// ---------------------------------------------------------------------------
// Sampling and reports

struct SampleOptions {
  std::uint64_t seed = 42;
  int samples = 100;
  double tolerance = 1e-8;
  double singular_threshold = 1e-6;
  int max_resample = 10;
  double max_skip_fraction = 0.2;
};

/// Coordinate box for a sample: complex annulus or real interval per slot.
struct SampleDomain {
  enum class Kind { ComplexAnnulus, RealBox };
  Kind kind = Kind::ComplexAnnulus;
  double inner = 0.3, outer = 2.0;                // annulus radii
  std::vector<std::pair<double, double>> ranges;  // real box, one per slot
  int size = 3;

  static SampleDomain annulus(int size) { return {Kind::ComplexAnnulus, 0.3, 2.0, {}, size}; }
  static SampleDomain box(std::vector<std::pair<double, double>> ranges) {
    const int n = static_cast<int>(ranges.size());
    return {Kind::RealBox, 0, 0, std::move(ranges), n};
  }
};

/// Deterministic sample number `index` (attempt counts resamples).
std::vector<Complex> draw_sample(const SampleDomain& domain, std::uint64_t seed, int index, int attempt);

struct SkippedSample {
  int index = 0;
  std::string reason;
};

struct VerificationReport {
  std::string check;
  int sample_count = 0;
  std::vector<double> residuals;  // evaluated samples in index order
  double max_residual = 0;
  std::vector<SkippedSample> skipped;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

/// Runs `residual` over seeded samples; singular evaluations are resampled,
/// persistent failures skipped and recorded.
VerificationReport run_check(const std::string& name, const SampleDomain& domain, const SampleOptions& options,
                             const std::function<double(std::span<const Complex>, const EvalContext&)>& residual);

// ---------------------------------------------------------------------------
// ODE checks

struct OdeSpec {
  int order = 2;
  Expression rhs;  // over x, y, p, y2, ..., y{order-1}

  static OdeSpec parse(int order, const std::string& rhs);
  static std::vector<std::string> jet_variables(int order);  // x, y, p, y2, ...
};

/// x-hat, y-hat, y-hat', ..., y-hat^(n) at a jet point of order >= n.
std::vector<Complex> prolong(const ContactMap& map, const JetPoint& jp, int order, const EvalContext& ctx = {});

VerificationReport contact_residual(const ContactMap& map, const SampleOptions& options = {});
VerificationReport symmetry_residual(const OdeSpec& ode, const ContactMap& map, const SampleOptions& options = {});
VerificationReport determining_residual(const std::vector<GeneratorSpec>& generators, const RealMatrix& b,
                                        const ContactMap& map, const SampleOptions& options = {});
VerificationReport commutator_check(const std::vector<GeneratorSpec>& generators, const StructureConstants& sc,
                                    const SampleOptions& options = {});

struct UniformityReport {
  VerificationReport report;
  Complex k;
};
UniformityReport is_uniform(const ContactMap& map, const SampleOptions& options = {});

/// |f_x h_p - f_p h_x - b| with f, h over (x, p).
VerificationReport one_dim_compat_residual(const Expression& f, const Expression& h, double b,
                                           const SampleOptions& options = {});

/// Domain used by the ODE checks for a given point size.
SampleDomain ode_domain(int size);

}  // namespace dcsym
