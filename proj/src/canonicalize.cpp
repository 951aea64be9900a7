#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "dcsym/auto_solve.hpp"
#include "dcsym/expression.hpp"

namespace dcsym {

namespace {

struct RatFunc {
  Polynomial num;
  Polynomial den{1};
};

struct Context {
  std::set<std::string> signs;
  std::map<std::string, std::string> abs_signs;  // variable or polynomial text -> sign name
  int counter = 0;
  std::string step;  // for error messages
};

RatFunc normalize(RatFunc f, const Context& ctx) {
  f.num = f.num.reduce_signs(ctx.signs);
  f.den = f.den.reduce_signs(ctx.signs);
  if (f.den.is_zero()) throw StrategyError(ctx.step + ": division by an identically zero entry");
  if (f.num.is_zero()) return {Polynomial(0), Polynomial(1)};
  // Sign factors in the denominator move to the numerator (s^-1 = s).
  Monomial den_content = f.den.monomial_content();
  for (const auto& [v, e] : den_content.factors())
    if (ctx.signs.count(v)) {
      Monomial m(v, e);
      f.den = f.den.divide_monomial(m);
      f.num = (f.num * Polynomial::term(1, m)).reduce_signs(ctx.signs);
    }
  if (auto q = f.num.divide_exact(f.den)) return {q->reduce_signs(ctx.signs), Polynomial(1)};
  const Monomial common = Monomial::gcd(f.num.monomial_content(), f.den.monomial_content());
  if (!common.is_one()) {
    f.num = f.num.divide_monomial(common);
    f.den = f.den.divide_monomial(common);
  }
  const Rational lead = f.den.leading_coefficient();
  f.num = f.num.scaled(1 / lead);
  f.den = f.den.scaled(1 / lead);
  return f;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num * b.num, a.den * b.den}; }
RatFunc operator-(const RatFunc& a) { return {-a.num, a.den}; }

RatFunc divide(const RatFunc& a, const RatFunc& b, const Context& ctx) {
  if (b.num.is_zero()) throw StrategyError(ctx.step + ": division by an identically zero entry");
  return {a.num * b.den, a.den * b.num};
}

RatFunc power(const RatFunc& a, long n, const Context& ctx) {
  if (n < 0) return normalize(divide(RatFunc{Polynomial(1)}, power(a, -n, ctx), ctx), ctx);
  return normalize({a.num.pow(static_cast<int>(n)), a.den.pow(static_cast<int>(n))}, ctx);
}

bool is_zero(const RatFunc& f) { return f.num.is_zero(); }

/// |p| written as sign * p, one sign parameter per variable (or per
/// non-monomial polynomial).
Polynomial abs_polynomial(const Polynomial& p, Context& ctx) {
  auto sign_for = [&](const std::string& key) {
    auto it = ctx.abs_signs.find(key);
    if (it != ctx.abs_signs.end()) return it->second;
    const std::string name = "sg" + std::to_string(++ctx.counter);
    ctx.abs_signs[key] = name;
    ctx.signs.insert(name);
    return name;
  };
  if (p.is_zero()) throw StrategyError(ctx.step + ": logarithm or absolute value of an identically zero entry");
  if (!p.is_monomial()) return Polynomial::variable(sign_for(p.monic().to_string())) * p;
  const auto& [mono, coeff] = *p.terms().begin();
  Polynomial out(abs(coeff));
  for (const auto& [v, e] : mono.factors()) {
    if (ctx.signs.count(v)) continue;
    out *= (Polynomial::variable(sign_for(v)) * Polynomial::variable(v)).pow(e);
  }
  return out.reduce_signs(ctx.signs);
}

RatFunc abs_value(const RatFunc& f, Context& ctx) {
  return normalize({abs_polynomial(f.num, ctx), abs_polynomial(f.den, ctx)}, ctx);
}

/// eps = rf + sum_k c_k ln|E_k|
struct Epsilon {
  RatFunc rf{Polynomial(0)};
  std::vector<std::pair<Rational, RatFunc>> logs;  // (c_k, |E_k|)
};

Epsilon eval_epsilon(const Node& node, const std::vector<RatFunc>& entries, Context& ctx) {
  auto sub = [&](int k) { return eval_epsilon(*node.children[static_cast<size_t>(k)], entries, ctx); };
  auto pure = [&](const Epsilon& e) {
    if (!e.logs.empty()) throw StrategyError(ctx.step + ": logarithm used outside a linear combination");
    return e.rf;
  };
  switch (node.kind) {
    case NodeKind::Variable:
      return {entries[static_cast<size_t>(node.index)], {}};
    case NodeKind::Number:
      return {RatFunc{Polynomial(node.value)}, {}};
    case NodeKind::Neg: {
      Epsilon e = sub(0);
      e.rf = -e.rf;
      for (auto& [c, f] : e.logs) c = -c;
      return e;
    }
    case NodeKind::Add:
    case NodeKind::Sub: {
      Epsilon a = sub(0), b = sub(1);
      const bool minus = node.kind == NodeKind::Sub;
      a.rf = normalize(minus ? a.rf - b.rf : a.rf + b.rf, ctx);
      for (auto& [c, f] : b.logs) a.logs.push_back({minus ? Rational(-c) : c, f});
      return a;
    }
    case NodeKind::Mul: {
      Epsilon a = sub(0), b = sub(1);
      if (a.logs.empty() && b.logs.empty()) return {normalize(a.rf * b.rf, ctx), {}};
      Epsilon& scalar = a.logs.empty() ? a : b;
      Epsilon& logs = a.logs.empty() ? b : a;
      const RatFunc s = pure(scalar);
      if (!logs.rf.num.is_zero() || !s.num.is_constant() || !s.den.is_constant())
        throw StrategyError(ctx.step + ": logarithm multiplied by a non-constant");
      const Rational k = s.num.constant_value() / s.den.constant_value();
      for (auto& [c, f] : logs.logs) c *= k;
      return logs;
    }
    case NodeKind::Div: {
      Epsilon a = sub(0);
      const RatFunc b = pure(sub(1));
      if (a.logs.empty()) return {normalize(divide(a.rf, b, ctx), ctx), {}};
      if (!b.num.is_constant() || !b.den.is_constant() || b.num.is_zero())
        throw StrategyError(ctx.step + ": logarithm divided by a non-constant");
      const Rational k = b.den.constant_value() / b.num.constant_value();
      for (auto& [c, f] : a.logs) c *= k;
      a.rf = normalize(a.rf * RatFunc{Polynomial(k)}, ctx);
      return a;
    }
    case NodeKind::Pow: {
      const Rational& e = node.value;
      if (e.get_den() != 1) throw StrategyError(ctx.step + ": fractional power in reduction parameter");
      return {power(pure(sub(0)), e.get_num().get_si(), ctx), {}};
    }
    case NodeKind::Abs:
      return {abs_value(pure(sub(0)), ctx), {}};
    case NodeKind::Ln: {
      const Node& arg = *node.children[0];
      RatFunc value;
      if (arg.kind == NodeKind::Abs) {
        value = abs_value(pure(eval_epsilon(*arg.children[0], entries, ctx)), ctx);
      } else {
        value = pure(eval_epsilon(arg, entries, ctx));
        if (!value.num.is_constant() || !value.den.is_constant() || value.num.constant_value() / value.den.constant_value() <= 0)
          throw StrategyError(ctx.step + ": logarithm argument must be abs(...) or a positive constant");
      }
      if (is_zero(value)) throw StrategyError(ctx.step + ": logarithm of an identically zero entry");
      return {RatFunc{Polynomial(0)}, {{Rational(1), value}}};
    }
    default:
      throw StrategyError(ctx.step + ": unsupported function in reduction parameter");
  }
}

bool is_diagonal(const RationalMatrix& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (r != c && m(r, c) != 0) return false;
  return true;
}

/// Symbolic A(j, eps) = exp(-eps ad X_j).
std::vector<RatFunc> symbolic_adjoint(const StructureConstants& sc, int j, const Epsilon& eps, Context& ctx) {
  const int n = sc.dim();
  const RationalMatrix m = ad_matrix(sc, j);
  std::vector<RatFunc> a(static_cast<size_t>(n * n), RatFunc{Polynomial(0)});
  auto at = [&](int r, int c) -> RatFunc& { return a[static_cast<size_t>(r * n + c)]; };
  if (nilpotency_index(sc, j)) {
    if (!eps.logs.empty()) throw StrategyError(ctx.step + ": logarithmic parameter for a nilpotent generator");
    RationalMatrix term = RationalMatrix::identity(n);
    RatFunc eps_power{Polynomial(1)};
    Rational factorial = 1;
    for (int k = 0; k < n; ++k) {
      if (term.is_zero()) break;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (term(r, c) != 0) at(r, c) = normalize(at(r, c) + eps_power * RatFunc{Polynomial(term(r, c) / factorial)}, ctx);
      term = term * m;
      eps_power = normalize(eps_power * (-eps.rf), ctx);
      factorial *= k + 1;
    }
    return a;
  }
  if (!is_diagonal(m)) throw StrategyError(ctx.step + ": adjoint action of the generator is neither nilpotent nor diagonal");
  for (int r = 0; r < n; ++r) {
    const Rational d = m(r, r);
    RatFunc value{Polynomial(1)};
    if (d != 0) {
      if (!eps.rf.num.is_zero()) throw StrategyError(ctx.step + ": non-logarithmic parameter for a diagonal generator");
      for (const auto& [c, f] : eps.logs) {
        const Rational exponent = -c * d;
        if (exponent.get_den() != 1) throw StrategyError(ctx.step + ": non-integer power in exp(-eps ad X)");
        value = normalize(value * power(f, exponent.get_num().get_si(), ctx), ctx);
      }
    }
    at(r, r) = value;
  }
  return a;
}

std::vector<RatFunc> multiply(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b, int n, const Context& ctx) {
  std::vector<RatFunc> out(static_cast<size_t>(n * n), RatFunc{Polynomial(0)});
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      RatFunc sum{Polynomial(0)};
      for (int k = 0; k < n; ++k) {
        const RatFunc& x = a[static_cast<size_t>(r * n + k)];
        const RatFunc& y = b[static_cast<size_t>(k * n + c)];
        if (!is_zero(x) && !is_zero(y)) sum = normalize(sum + x * y, ctx);
      }
      out[static_cast<size_t>(r * n + c)] = sum;
    }
  return out;
}

std::vector<std::string> entry_names(int n) {
  std::vector<std::string> names;
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) names.push_back(entry_name(r, c));
  return names;
}

bool case_matches(const BMatrixFamily& f, const StrategyCase& sc) {
  for (const auto& [r, c] : sc.when_nonzero)
    if (r < 1 || c < 1 || r > f.dim || c > f.dim || f.entry(r, c).is_zero()) return false;
  for (const auto& [r, c] : sc.when_zero)
    if (r < 1 || c < 1 || r > f.dim || c > f.dim || !f.entry(r, c).is_zero()) return false;
  return true;
}

struct Reduced {
  std::vector<RatFunc> entries;
  Context ctx;
};

Reduced start(const BMatrixFamily& family) {
  Reduced state;
  state.ctx.signs = family.sign_parameters();
  for (const auto& e : family.entries) state.entries.push_back({e, Polynomial(1)});
  return state;
}

void apply_step(const StructureConstants& sc, Reduced& state, const ReductionStep& step, const std::string& label) {
  const int n = sc.dim();
  state.ctx.step = label;
  if (step.generator < 1 || step.generator > n) throw StrategyError(label + ": generator index out of range");
  Expression eps_expr;
  try {
    eps_expr = Expression::parse(step.epsilon, entry_names(n));
  } catch (const ParseError& e) {
    throw StrategyError(label + ": " + e.what());
  }
  const Epsilon eps = eval_epsilon(*eps_expr.root(), state.entries, state.ctx);
  const auto a = symbolic_adjoint(sc, step.generator, eps, state.ctx);
  state.entries = multiply(a, state.entries, n, state.ctx);
}

BMatrixFamily finish(const BMatrixFamily& original, const Reduced& state, const std::string& label) {
  BMatrixFamily f;
  f.dim = original.dim;
  for (size_t k = 0; k < state.entries.size(); ++k) {
    const RatFunc& e = state.entries[k];
    if (!e.den.is_constant()) {
      const int r = static_cast<int>(k) / f.dim + 1, c = static_cast<int>(k) % f.dim + 1;
      throw StrategyError(label + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
                          ") is not polynomial after reduction: (" + e.num.to_string() + ")/(" + e.den.to_string() + ")");
    }
    f.entries.push_back(e.num.scaled(1 / e.den.constant_value()).reduce_signs(state.ctx.signs));
  }
  std::set<std::string> used;
  for (const auto& e : f.entries)
    for (const auto& v : e.variables()) used.insert(v);
  for (const auto& p : original.parameters)
    if (used.count(p.name)) f.parameters.push_back(p);
  for (const auto& [key, name] : state.ctx.abs_signs)
    if (used.count(name)) f.parameters.push_back({name, ParamDomain::Sign});
  for (const auto& cond : original.nonzero_conditions) {
    bool keep = true;
    for (const auto& v : cond.variables()) keep = keep && used.count(v);
    if (keep) f.nonzero_conditions.push_back(cond);
  }
  return simplify_parameters(f);
}

std::string greek(int k) {
  static const char* names[] = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta"};
  if (k < 8) return names[k];
  return "sigma" + std::to_string(k - 7);
}

}  // namespace

// ---------------------------------------------------------------------------

BMatrixFamily simplify_parameters(const BMatrixFamily& input) {
  BMatrixFamily f = input;
  auto domain_of = [&](const std::string& v) {
    auto p = f.parameter(v);
    return p ? p->domain : ParamDomain::Real;
  };
  auto occurrences = [&](const std::string& v) {
    int count = 0;
    for (const auto& e : f.entries) count += e.contains(v) ? 1 : 0;
    for (const auto& c : f.nonzero_conditions) count += c.contains(v) ? 2 : 0;
    return count;
  };

  // Absorb an entry into a fresh parameter when some parameter occurring only
  // in that entry lets it sweep the whole domain.
  int fresh = 0;
  for (auto& entry : f.entries) {
    if (entry.is_constant()) continue;
    const auto vars = entry.variables();
    auto exclusive = [&](const std::string& v) { return occurrences(v) == 1; };
    auto is_nonzero = [&](const std::string& v) {
      return domain_of(v) == ParamDomain::Sign || domain_of(v) == ParamDomain::NonZero;
    };
    std::optional<ParamDomain> domain;
    if (entry.is_monomial()) {
      const Rational coeff = entry.terms().begin()->second;
      const Monomial& mono = entry.terms().begin()->first;
      bool all_sign_exclusive = true;
      for (const auto& v : vars) all_sign_exclusive = all_sign_exclusive && exclusive(v) && domain_of(v) == ParamDomain::Sign;
      if (all_sign_exclusive && abs(coeff) == 1) {
        domain = ParamDomain::Sign;
      } else {
        for (const auto& v : vars) {
          if (!exclusive(v)) continue;
          bool others_nonzero = true;
          for (const auto& w : vars) others_nonzero = others_nonzero && (w == v || is_nonzero(w));
          if (!others_nonzero) continue;
          const int e = mono.exponent_of(v);
          if (domain_of(v) == ParamDomain::NonZero && e % 2 == 1) domain = ParamDomain::NonZero;
          if (domain_of(v) == ParamDomain::Real && e == 1 && !domain) domain = ParamDomain::Real;
        }
      }
      if (vars.size() == 1 && entry.total_degree() == 1 && coeff == 1) domain.reset();
    } else {
      for (const auto& v : vars)
        if (exclusive(v) && domain_of(v) == ParamDomain::Real && entry.degree_in(v) == 1 && entry.coefficient(v, 1).is_constant())
          domain = ParamDomain::Real;
    }
    if (!domain) continue;
    const std::string name = "__p" + std::to_string(++fresh);
    entry = Polynomial::variable(name);
    f.parameters.push_back({name, *domain});
  }

  // Keep only parameters that still occur, ordered by first appearance.
  std::vector<std::string> order;
  std::map<std::string, std::pair<int, int>> first;
  for (int r = 1; r <= f.dim; ++r)
    for (int c = 1; c <= f.dim; ++c)
      for (const auto& v : f.entry(r, c).variables())
        if (!first.count(v)) {
          first[v] = {r, c};
          order.push_back(v);
        }
  for (const auto& cond : f.nonzero_conditions)
    for (const auto& v : cond.variables())
      if (!first.count(v)) {
        first[v] = {0, 0};
        order.push_back(v);
      }

  std::map<std::string, std::string> names;
  std::vector<Parameter> params;
  std::set<std::string> taken;
  int greek_count = 0;
  for (const auto& v : order) {
    const ParamDomain d = domain_of(v);
    std::string name;
    if (d == ParamDomain::Sign) {
      name = greek(greek_count++);
    } else {
      const auto [r, c] = first[v];
      name = r > 0 ? entry_name(r, c) : "q";
      std::string base = name;
      for (int k = 2; taken.count(name); ++k) name = base + "_" + std::to_string(k);
    }
    taken.insert(name);
    names[v] = name;
    params.push_back({name, d});
  }
  for (auto& e : f.entries) e = e.rename(names);
  for (auto& c : f.nonzero_conditions) c = c.rename(names);
  f.parameters = params;
  return f;
}

bool equivalent_up_to_renaming(const BMatrixFamily& a, const BMatrixFamily& b) {
  if (a.dim != b.dim || a.parameters.size() != b.parameters.size() ||
      a.nonzero_conditions.size() != b.nonzero_conditions.size())
    return false;
  for (size_t k = 0; k < a.entries.size(); ++k)
    if (a.entries[k].is_zero() != b.entries[k].is_zero()) return false;

  std::vector<std::string> from, to;
  for (const auto& p : a.parameters) from.push_back(p.name);
  for (const auto& p : b.parameters) to.push_back(p.name);
  std::vector<size_t> perm(to.size());
  std::iota(perm.begin(), perm.end(), 0);
  const auto signs_b = b.sign_parameters();
  auto monic_set = [](const std::vector<Polynomial>& ps, const std::set<std::string>& signs) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.reduce_signs(signs).monic().to_string());
    std::sort(out.begin(), out.end());
    return out;
  };
  do {
    bool domains_ok = true;
    for (size_t k = 0; k < perm.size(); ++k)
      domains_ok = domains_ok && a.parameters[k].domain == b.parameters[perm[k]].domain;
    if (!domains_ok) continue;
    std::vector<size_t> sign_slots;
    for (size_t k = 0; k < perm.size(); ++k)
      if (a.parameters[k].domain == ParamDomain::Sign) sign_slots.push_back(k);
    for (size_t mask = 0; mask < (size_t{1} << sign_slots.size()); ++mask) {
      std::map<std::string, Polynomial> subst;
      for (size_t k = 0; k < perm.size(); ++k) subst[from[k]] = Polynomial::variable(to[perm[k]]);
      for (size_t s = 0; s < sign_slots.size(); ++s)
        if ((mask >> s) & 1) subst[from[sign_slots[s]]] = -subst[from[sign_slots[s]]];
      bool same = true;
      for (size_t k = 0; k < a.entries.size() && same; ++k)
        same = a.entries[k].substitute(subst).reduce_signs(signs_b) == b.entries[k].reduce_signs(signs_b);
      if (!same) continue;
      std::vector<Polynomial> conds;
      for (const auto& c : a.nonzero_conditions) conds.push_back(c.substitute(subst));
      if (monic_set(conds, signs_b) == monic_set(b.nonzero_conditions, signs_b)) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<BMatrixFamily> canonicalize(const StructureConstants& sc, const std::vector<BMatrixFamily>& families,
                                        const Strategy& strategy) {
  std::vector<BMatrixFamily> out;
  for (size_t fi = 0; fi < families.size(); ++fi) {
    const BMatrixFamily& family = families[fi];
    if (family.dim != sc.dim()) throw StrategyError("family dimension does not match the algebra");
    const StrategyCase* chosen = nullptr;
    for (const auto& c : strategy.cases)
      if (case_matches(family, c)) {
        chosen = &c;
        break;
      }
    if (!chosen)
      throw StrategyError("strategy '" + strategy.name + "' has no case matching family " + std::to_string(fi + 1) + ": " +
                          family.to_string());
    Reduced state = start(family);
    for (size_t k = 0; k < chosen->steps.size(); ++k) {
      const auto& step = chosen->steps[k];
      apply_step(sc, state, step,
                 "step " + std::to_string(k + 1) + " (j=" + std::to_string(step.generator) + ", eps=" + step.epsilon + ")");
    }
    BMatrixFamily reduced = finish(family, state, "strategy '" + strategy.name + "'");
    bool duplicate = false;
    for (const auto& g : out) duplicate = duplicate || equivalent_up_to_renaming(reduced, g);
    if (!duplicate) out.push_back(std::move(reduced));
  }
  return out;
}

namespace {

int complexity(const BMatrixFamily& f) {
  int score = 0;
  for (const auto& e : f.entries)
    if (!e.is_constant()) score += 1 + static_cast<int>(e.terms().size());
  for (const auto& p : f.parameters) score += p.domain == ParamDomain::Sign ? 0 : 1;
  return score;
}

std::optional<BMatrixFamily> try_step(const StructureConstants& sc, const BMatrixFamily& f, const ReductionStep& step) {
  try {
    Reduced state = start(f);
    apply_step(sc, state, step, "greedy");
    return finish(f, state, "greedy");
  } catch (const StrategyError&) {
    return std::nullopt;
  }
}

}  // namespace

BMatrixFamily canonicalize_greedy(const StructureConstants& sc, const BMatrixFamily& family) {
  const int n = sc.dim();
  BMatrixFamily current = simplify_parameters(family);
  auto nonzero_pivot = [&](const Polynomial& p) {
    if (!p.is_monomial() || p.is_constant()) return false;
    for (const auto& v : p.variables()) {
      auto param = current.parameter(v);
      if (!param || (param->domain != ParamDomain::NonZero && param->domain != ParamDomain::Sign)) return false;
    }
    return true;
  };
  for (int round = 0; round < 4 * n * n; ++round) {
    std::vector<ReductionStep> candidates;
    for (int j = 1; j <= n; ++j) {
      const RationalMatrix m = ad_matrix(sc, j);
      if (nilpotency_index(sc, j)) {
        // Rank-one nilpotent action: row r gains a multiple of row k.
        std::vector<std::pair<int, int>> nz;
        for (int r = 0; r < n; ++r)
          for (int k = 0; k < n; ++k)
            if (m(r, k) != 0) nz.push_back({r, k});
        if (nz.size() != 1) continue;
        const auto [r, k] = nz[0];
        for (int c = 1; c <= n; ++c) {
          const Polynomial& pivot = current.entry(k + 1, c);
          const Polynomial& target = current.entry(r + 1, c);
          if (target.is_zero() || !nonzero_pivot(pivot)) continue;
          candidates.push_back({j, "(" + entry_name(r + 1, c) + ")/((" + to_string(m(r, k)) + ")*" + entry_name(k + 1, c) + ")"});
        }
      } else {
        bool diagonal = true;
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) diagonal = diagonal && (r == c || m(r, c) == 0);
        if (!diagonal) continue;
        for (int r = 0; r < n; ++r) {
          if (m(r, r) == 0) continue;
          for (int c = 1; c <= n; ++c)
            if (nonzero_pivot(current.entry(r + 1, c)) && current.entry(r + 1, c).variables().size() <= 2)
              candidates.push_back({j, "(" + to_string(Rational(1) / m(r, r)) + ")*ln(abs(" + entry_name(r + 1, c) + "))"});
        }
      }
    }
    bool improved = false;
    for (const auto& step : candidates) {
      auto next = try_step(sc, current, step);
      if (next && complexity(*next) < complexity(current) && next->generically_nonsingular()) {
        current = *next;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return current;
}

}  // namespace dcsym
