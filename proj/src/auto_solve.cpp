#include "dcsym/auto_solve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "dcsym/expression.hpp"

namespace dcsym {

std::string to_string(ParamDomain domain) {
  switch (domain) {
    case ParamDomain::Real:
      return "real";
    case ParamDomain::NonZero:
      return "nonzero";
    case ParamDomain::Sign:
      return "sign";
    case ParamDomain::Integer:
      return "integer";
  }
  return "real";
}

ParamDomain parse_domain(const std::string& text) {
  if (text == "real") return ParamDomain::Real;
  if (text == "nonzero") return ParamDomain::NonZero;
  if (text == "sign") return ParamDomain::Sign;
  if (text == "integer") return ParamDomain::Integer;
  throw InputError("unknown parameter domain '" + text + "'");
}

std::string entry_name(int row, int col) {
  if (row > 9 || col > 9) return "b" + std::to_string(row) + "_" + std::to_string(col);
  return "b" + std::to_string(row) + std::to_string(col);
}

// ---------------------------------------------------------------------------
// BMatrixFamily

std::optional<Parameter> BMatrixFamily::parameter(const std::string& name) const {
  for (const auto& p : parameters)
    if (p.name == name) return p;
  return std::nullopt;
}

std::set<std::string> BMatrixFamily::sign_parameters() const {
  std::set<std::string> out;
  for (const auto& p : parameters)
    if (p.domain == ParamDomain::Sign) out.insert(p.name);
  return out;
}

std::set<std::string> BMatrixFamily::parameter_names() const {
  std::set<std::string> out;
  for (const auto& p : parameters) out.insert(p.name);
  return out;
}

RationalMatrix BMatrixFamily::instantiate(const std::map<std::string, Rational>& values) const {
  RationalMatrix m(dim, dim);
  for (int r = 1; r <= dim; ++r)
    for (int c = 1; c <= dim; ++c) m(r - 1, c - 1) = entry(r, c).evaluate(values);
  return m;
}

std::map<std::string, Rational> BMatrixFamily::random_instance(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 7);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> small(-3, 3);
  std::map<std::string, Rational> values;
  for (const auto& p : parameters) {
    switch (p.domain) {
      case ParamDomain::Sign:
        values[p.name] = coin(rng) ? 1 : -1;
        break;
      case ParamDomain::Integer:
        values[p.name] = small(rng);
        break;
      default: {
        int n = 0;
        while (n == 0) n = num(rng);
        Rational q(n, den(rng));
        q.canonicalize();
        values[p.name] = q;
      }
    }
  }
  return values;
}

std::vector<bool> BMatrixFamily::support() const {
  std::vector<bool> out;
  for (const auto& e : entries) out.push_back(!e.is_zero());
  return out;
}

bool BMatrixFamily::generically_nonsingular(std::uint64_t seed, int trials) const {
  for (int t = 0; t < trials; ++t)
    if (instantiate(random_instance(seed + static_cast<std::uint64_t>(t) * 7919)).determinant() != 0) return true;
  return false;
}

namespace {

std::string describe_parameters(const BMatrixFamily& f) {
  std::vector<std::string> parts;
  std::vector<std::string> signs, nonzero, integer;
  for (const auto& p : f.parameters) {
    if (p.domain == ParamDomain::Sign) signs.push_back(p.name);
    if (p.domain == ParamDomain::NonZero) nonzero.push_back(p.name);
    if (p.domain == ParamDomain::Integer) integer.push_back(p.name);
  }
  auto join = [](const std::vector<std::string>& names) {
    std::string s;
    for (size_t k = 0; k < names.size(); ++k) s += (k ? "," : "") + names[k];
    return s;
  };
  if (!signs.empty()) parts.push_back(join(signs) + " in {-1,1}");
  if (!nonzero.empty()) parts.push_back(join(nonzero) + " != 0");
  if (!integer.empty()) parts.push_back(join(integer) + " integer");
  for (const auto& c : f.nonzero_conditions) parts.push_back(c.to_string() + " != 0");
  std::string s;
  for (size_t k = 0; k < parts.size(); ++k) s += (k ? "; " : "") + parts[k];
  return s;
}

}  // namespace

std::string BMatrixFamily::to_string() const {
  std::string s = "[";
  for (int r = 1; r <= dim; ++r) {
    s += r > 1 ? ", [" : "[";
    for (int c = 1; c <= dim; ++c) s += (c > 1 ? ", " : "") + entry(r, c).to_string();
    s += "]";
  }
  s += "]";
  const std::string params = describe_parameters(*this);
  if (!params.empty()) s += "; " + params;
  return s;
}

std::string BMatrixFamily::to_pretty_string() const {
  std::vector<size_t> width(static_cast<size_t>(dim), 1);
  for (int r = 1; r <= dim; ++r)
    for (int c = 1; c <= dim; ++c) width[static_cast<size_t>(c - 1)] = std::max(width[static_cast<size_t>(c - 1)], entry(r, c).to_string().size());
  std::ostringstream os;
  for (int r = 1; r <= dim; ++r) {
    os << "[ ";
    for (int c = 1; c <= dim; ++c) {
      const std::string e = entry(r, c).to_string();
      os << e << std::string(width[static_cast<size_t>(c - 1)] - e.size(), ' ') << (c < dim ? "  " : " ");
    }
    os << "]\n";
  }
  const std::string params = describe_parameters(*this);
  if (!params.empty()) os << "  " << params << "\n";
  return os.str();
}

namespace {

Polynomial node_to_polynomial(const NodePtr& node, const std::vector<std::string>& vars) {
  switch (node->kind) {
    case NodeKind::Variable:
      return Polynomial::variable(vars[static_cast<size_t>(node->index)]);
    case NodeKind::Number:
      return Polynomial(node->value);
    case NodeKind::Neg:
      return -node_to_polynomial(node->children[0], vars);
    case NodeKind::Add:
      return node_to_polynomial(node->children[0], vars) + node_to_polynomial(node->children[1], vars);
    case NodeKind::Sub:
      return node_to_polynomial(node->children[0], vars) - node_to_polynomial(node->children[1], vars);
    case NodeKind::Mul:
      return node_to_polynomial(node->children[0], vars) * node_to_polynomial(node->children[1], vars);
    case NodeKind::Div: {
      Polynomial den = node_to_polynomial(node->children[1], vars);
      if (!den.is_constant() || den.is_zero()) throw InputError("entry is not a polynomial");
      return node_to_polynomial(node->children[0], vars).scaled(Rational(1) / den.constant_value());
    }
    case NodeKind::Pow: {
      const Rational& e = node->value;
      if (e < 0 || e.get_den() != 1) throw InputError("entry is not a polynomial");
      return node_to_polynomial(node->children[0], vars).pow(static_cast<int>(e.get_num().get_si()));
    }
    default:
      throw InputError("entry is not a polynomial");
  }
}

}  // namespace

BMatrixFamily make_family(const std::vector<std::vector<std::string>>& rows, const std::vector<Parameter>& parameters) {
  BMatrixFamily f;
  f.dim = static_cast<int>(rows.size());
  f.parameters = parameters;
  std::vector<std::string> names;
  for (const auto& p : parameters) names.push_back(p.name);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != f.dim) throw InputError("family matrix must be square");
    for (const auto& text : row) {
      Expression e = Expression::parse(text, names);
      f.entries.push_back(node_to_polynomial(e.root(), names).reduce_signs(f.sign_parameters()));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Constraints

ConstraintSystem generate_constraints(const StructureConstants& sc) {
  ConstraintSystem sys;
  const int n = sc.dim();
  sys.dim = n;
  auto b = [](int r, int c) { return Polynomial::variable(entry_name(r, c)); };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int out = 1; out <= n; ++out) {
        Polynomial poly;
        for (int l = 1; l <= n; ++l)
          for (int m = 1; m <= n; ++m) {
            const Rational c = sc(l, m, out);
            if (c != 0) poly += (b(i, l) * b(j, m)).scaled(c);
          }
        for (int k = 1; k <= n; ++k) {
          const Rational c = sc(i, j, k);
          if (c != 0) poly -= b(k, out).scaled(c);
        }
        if (!poly.is_zero()) sys.equations.push_back({poly, i, j, out});
      }
  return sys;
}

std::string ConstraintSystem::to_string() const {
  std::ostringstream os;
  for (const auto& eq : equations) os << "(" << eq.i << "," << eq.j << "," << eq.n << "): " << eq.poly.to_string() << " = 0\n";
  return os.str();
}

double constraint_residual(const RealMatrix& b, const ConstraintSystem& sys) {
  if (b.rows() != sys.dim || b.cols() != sys.dim) throw InputError("matrix dimension does not match constraint system");
  std::map<std::string, double> point;
  for (int r = 1; r <= sys.dim; ++r)
    for (int c = 1; c <= sys.dim; ++c) point[entry_name(r, c)] = b(r - 1, c - 1);
  double worst = 0;
  for (const auto& eq : sys.equations) worst = std::max(worst, std::abs(eq.poly.evaluate_double(point)));
  return worst;
}

Rational constraint_residual(const RationalMatrix& b, const ConstraintSystem& sys) {
  if (b.rows() != sys.dim || b.cols() != sys.dim) throw InputError("matrix dimension does not match constraint system");
  std::map<std::string, Rational> point;
  for (int r = 1; r <= sys.dim; ++r)
    for (int c = 1; c <= sys.dim; ++c) point[entry_name(r, c)] = b(r - 1, c - 1);
  Rational worst = 0;
  for (const auto& eq : sys.equations) worst = std::max(worst, Rational(abs(eq.poly.evaluate(point))));
  return worst;
}

// ---------------------------------------------------------------------------
// Branching engine

namespace {

struct Branch {
  std::vector<TaggedPolynomial> eqs;
  std::map<std::string, Polynomial> subst;
  std::vector<Polynomial> nonzero;
  std::set<std::string> signs;
  int next_sign = 1;
};

std::set<std::string> known_nonzero_vars(const Branch& b) {
  std::set<std::string> out(b.signs);
  for (const auto& p : b.nonzero)
    if (p.is_monomial())
      for (const auto& v : p.variables()) out.insert(v);
  return out;
}

Polynomial strip_known_factors(const Polynomial& p, const std::set<std::string>& nonzero_vars) {
  const Monomial content = p.monomial_content();
  Monomial known;
  for (const auto& [v, e] : content.factors())
    if (nonzero_vars.count(v)) known = known * Monomial(v, e);
  return known.is_one() ? p : p.divide_monomial(known);
}

/// Simplifies in place; false when the branch is inconsistent.
bool normalize(Branch& b) {
  for (int pass = 0; pass < 4; ++pass) {
    std::vector<Polynomial> nonzero;
    for (auto p : b.nonzero) {
      p = p.reduce_signs(b.signs);
      if (p.is_zero()) return false;
      if (p.is_constant()) continue;
      p = p.monic();
      if (std::find(nonzero.begin(), nonzero.end(), p) == nonzero.end()) nonzero.push_back(p);
    }
    b.nonzero = std::move(nonzero);
    const auto nz_vars = known_nonzero_vars(b);
    std::vector<TaggedPolynomial> eqs;
    bool changed = false;
    for (auto eq : b.eqs) {
      Polynomial p = eq.poly.reduce_signs(b.signs);
      p = strip_known_factors(p, nz_vars);
      if (p.is_zero()) continue;
      if (p.is_constant()) return false;
      p = p.monic();
      if (std::find(b.nonzero.begin(), b.nonzero.end(), p) != b.nonzero.end()) return false;
      auto dup = std::find_if(eqs.begin(), eqs.end(), [&](const TaggedPolynomial& t) { return t.poly == p; });
      if (dup != eqs.end()) continue;
      changed = changed || !(p == eq.poly);
      eqs.push_back({p, eq.tag});
    }
    b.eqs = std::move(eqs);
    if (!changed) break;
  }
  return true;
}

void substitute(Branch& b, const std::string& var, const Polynomial& value) {
  for (auto& eq : b.eqs) eq.poly = eq.poly.substitute(var, value).reduce_signs(b.signs);
  for (auto& p : b.nonzero) p = p.substitute(var, value).reduce_signs(b.signs);
  for (auto& [k, v] : b.subst) v = v.substitute(var, value).reduce_signs(b.signs);
  b.subst[var] = value.reduce_signs(b.signs);
  if (b.signs.count(var)) {
    // A sign unknown keeps its square condition.
    b.signs.erase(var);
    b.eqs.push_back({(value * value - Polynomial(1)).reduce_signs(b.signs), {1 << 20}});
  }
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class num, den;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) || !mpz_perfect_square_p(q.get_den().get_mpz_t())) return std::nullopt;
  mpz_sqrt(num.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den().get_mpz_t());
  return Rational(num, den);
}

std::string describe(const Branch& b) {
  std::string s;
  for (const auto& eq : b.eqs) s += (s.empty() ? "" : "; ") + eq.poly.to_string() + " = 0";
  for (const auto& p : b.nonzero) s += (s.empty() ? "" : "; ") + p.to_string() + " != 0";
  return s;
}

enum class Outcome { Branched, Unresolved };

/// Applies the first applicable rule; pushes children in processing order.
Outcome expand(Branch& b, std::vector<Branch>& children, const std::string& sign_prefix) {
  std::vector<size_t> order(b.eqs.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    const auto vx = b.eqs[x].poly.variables().size();
    const auto vy = b.eqs[y].poly.variables().size();
    if (vx != vy) return vx < vy;
    return b.eqs[x].tag < b.eqs[y].tag;
  });
  const auto nz_vars = known_nonzero_vars(b);

  for (size_t idx : order) {
    const Polynomial& p = b.eqs[idx].poly;
    const auto vars = p.variables();

    // Pivot factor: p = v * q with v not known to be nonzero.
    const Monomial content = p.monomial_content();
    for (const auto& [v, e] : content.factors()) {
      if (nz_vars.count(v)) continue;
      Branch zero = b;
      substitute(zero, v, Polynomial(0));
      Branch nonzero = b;
      nonzero.nonzero.push_back(Polynomial::variable(v));
      children.push_back(std::move(zero));
      children.push_back(std::move(nonzero));
      return Outcome::Branched;
    }

    // Linear in u with a constant coefficient; non-sign unknowns first.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : vars) {
        if ((pass == 0) == (b.signs.count(u) > 0)) continue;
        if (p.degree_in(u) != 1) continue;
        const Polynomial coeff = p.coefficient(u, 1);
        if (!coeff.is_constant()) continue;
        const Polynomial rest = p.coefficient(u, 0);
        Branch next = b;
        substitute(next, u, rest.scaled(Rational(-1) / coeff.constant_value()));
        children.push_back(std::move(next));
        return Outcome::Branched;
      }

    // Univariate quadratic.
    if (vars.size() == 1 && p.degree_in(*vars.begin()) == 2) {
      const std::string u = *vars.begin();
      const Rational a = p.coefficient(u, 2).constant_value();
      const Rational bq = p.coefficient(u, 1).constant_value();
      const Rational c = p.coefficient(u, 0).constant_value();
      if (bq == 0) {
        const Rational r = -c / a;
        if (r < 0) return Outcome::Branched;  // no real root: branch dies
        if (auto root = rational_sqrt(r)) {
          Branch next = b;
          const std::string s = sign_prefix + std::to_string(next.next_sign++);
          next.signs.insert(s);
          substitute(next, u, Polynomial::variable(s).scaled(*root));
          children.push_back(std::move(next));
          return Outcome::Branched;
        }
      } else {
        const Rational disc = bq * bq - 4 * a * c;
        if (disc < 0) return Outcome::Branched;
        if (auto root = rational_sqrt(disc)) {
          for (int sgn : {1, -1}) {
            Branch next = b;
            Rational value = (-bq + sgn * *root) / (2 * a);
            substitute(next, u, Polynomial(value));
            children.push_back(std::move(next));
            if (*root == 0) break;
          }
          return Outcome::Branched;
        }
      }
    }

    // Linear in u with a coefficient c known to be nonzero. When c does not
    // divide the rest, a variable w whose absence leaves a multiple of c is
    // rescaled w -> c w.
    for (const auto& u : vars) {
      if (b.signs.count(u) || p.degree_in(u) != 1) continue;
      const Polynomial coeff = p.coefficient(u, 1);
      if (!coeff.is_monomial()) continue;
      bool known = true;
      for (const auto& v : coeff.variables()) known = known && nz_vars.count(v);
      if (!known) continue;
      const Polynomial rest = p.coefficient(u, 0);
      if (auto quotient = rest.divide_exact(coeff)) {
        Branch next = b;
        substitute(next, u, -*quotient);
        children.push_back(std::move(next));
        return Outcome::Branched;
      }
      const Monomial scale = coeff.terms().begin()->first;
      for (const auto& w : rest.variables()) {
        if (w == u || coeff.contains(w) || b.signs.count(w) || !rest.coefficient(w, 0).divide_exact(coeff))
          continue;
        Branch next = b;
        substitute(next, w, Polynomial::term(1, scale) * Polynomial::variable(w));
        next.subst.erase(w);
        const Polynomial scaled_rest = rest.substitute(w, Polynomial::term(1, scale) * Polynomial::variable(w));
        substitute(next, u, -*scaled_rest.divide_exact(coeff));
        children.push_back(std::move(next));
        return Outcome::Branched;
      }
    }

    // Linear in u with a monomial coefficient: split on a factor vanishing.
    for (const auto& u : vars) {
      if (b.signs.count(u) || p.degree_in(u) != 1) continue;
      const Polynomial coeff = p.coefficient(u, 1);
      if (!coeff.is_monomial()) continue;
      for (const auto& v : coeff.variables()) {
        if (nz_vars.count(v)) continue;
        Branch zero = b;
        substitute(zero, v, Polynomial(0));
        Branch nonzero = b;
        nonzero.nonzero.push_back(Polynomial::variable(v));
        children.push_back(std::move(zero));
        children.push_back(std::move(nonzero));
        return Outcome::Branched;
      }
    }

    // Linear in u with a polynomial coefficient c: split on c = 0.
    for (const auto& u : vars) {
      if (b.signs.count(u) || p.degree_in(u) != 1) continue;
      const Polynomial coeff = p.coefficient(u, 1);
      const Polynomial rest = p.coefficient(u, 0);
      auto quotient = rest.divide_exact(coeff);
      if (!quotient) continue;
      Branch vanish = b;
      vanish.eqs.push_back({coeff, b.eqs[idx].tag});
      Branch solve = b;
      solve.nonzero.push_back(coeff);
      substitute(solve, u, -*quotient);
      children.push_back(std::move(vanish));
      children.push_back(std::move(solve));
      return Outcome::Branched;
    }
  }
  return Outcome::Unresolved;
}

}  // namespace

EngineResult solve_polynomial_system(std::vector<TaggedPolynomial> equations, std::vector<Polynomial> nonzero,
                                     std::set<std::string> signs, std::size_t node_budget,
                                     const std::string& sign_prefix) {
  EngineResult result;
  std::vector<Branch> stack;
  Branch root;
  root.eqs = std::move(equations);
  root.nonzero = std::move(nonzero);
  root.signs = std::move(signs);
  stack.push_back(std::move(root));
  while (!stack.empty()) {
    if (result.nodes >= node_budget) {
      result.budget_exhausted = true;
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) result.unresolved.push_back("pending: " + describe(*it));
      break;
    }
    Branch b = std::move(stack.back());
    stack.pop_back();
    ++result.nodes;
    if (!normalize(b)) continue;
    if (b.eqs.empty()) {
      result.leaves.push_back({b.subst, b.nonzero, b.signs});
      continue;
    }
    std::vector<Branch> children;
    if (expand(b, children, sign_prefix) == Outcome::Unresolved) {
      result.unresolved.push_back("stuck: " + describe(b));
      continue;
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Families

namespace {

// Fraction-free elimination; every division is exact.
Polynomial determinant(std::vector<Polynomial> m, int n) {
  auto at = [&](int r, int c) -> Polynomial& { return m[static_cast<size_t>(r * n + c)]; };
  Polynomial previous(1);
  bool negate = false;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    while (pivot < n && at(pivot, k).is_zero()) ++pivot;
    if (pivot == n) return Polynomial();
    if (pivot != k) {
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(pivot, c));
      negate = !negate;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c) {
        const Polynomial num = at(k, k) * at(r, c) - at(r, k) * at(k, c);
        at(r, c) = *num.divide_exact(previous);
      }
      at(r, k) = Polynomial();
    }
    previous = at(k, k);
  }
  return negate ? -previous : previous;
}

BMatrixFamily family_from_leaf(int dim, const SolverLeaf& leaf) {
  BMatrixFamily f;
  f.dim = dim;
  std::set<std::string> used;
  for (int r = 1; r <= dim; ++r)
    for (int c = 1; c <= dim; ++c) {
      const std::string name = entry_name(r, c);
      auto it = leaf.substitution.find(name);
      Polynomial e = it == leaf.substitution.end() ? Polynomial::variable(name) : it->second;
      for (const auto& v : e.variables()) used.insert(v);
      f.entries.push_back(std::move(e));
    }
  std::set<std::string> nonzero_vars;
  for (const auto& p : leaf.nonzero)
    if (p.is_monomial())
      for (const auto& v : p.variables()) nonzero_vars.insert(v);
    else
      f.nonzero_conditions.push_back(p);
  // Parameters in order of first appearance (row-major), signs included.
  std::vector<std::string> ordered;
  for (const auto& e : f.entries)
    for (const auto& v : e.variables())
      if (std::find(ordered.begin(), ordered.end(), v) == ordered.end()) ordered.push_back(v);
  for (const auto& p : f.nonzero_conditions)
    for (const auto& v : p.variables())
      if (std::find(ordered.begin(), ordered.end(), v) == ordered.end()) ordered.push_back(v);
  for (const auto& v : ordered) {
    ParamDomain d = ParamDomain::Real;
    if (leaf.signs.count(v))
      d = ParamDomain::Sign;
    else if (nonzero_vars.count(v))
      d = ParamDomain::NonZero;
    f.parameters.push_back({v, d});
  }
  // A parameter whose vanishing kills the determinant is nonzero.
  const Polynomial det = determinant(f.entries, dim);
  if (!det.is_zero())
    for (auto& p : f.parameters)
      if (p.domain == ParamDomain::Real && det.substitute(p.name, Polynomial()).is_zero()) p.domain = ParamDomain::NonZero;
  return f;
}

bool same_family(const BMatrixFamily& a, const BMatrixFamily& b) {
  return a.dim == b.dim && a.entries == b.entries && a.parameters == b.parameters && a.nonzero_conditions == b.nonzero_conditions;
}

}  // namespace

std::vector<BMatrixFamily> solve_families(const StructureConstants& sc, const SolverOptions& options) {
  if (sc.dim() > 8) throw InputError("solver supports algebras of dimension at most 8");
  const ConstraintSystem sys = generate_constraints(sc);
  std::vector<TaggedPolynomial> eqs;
  for (const auto& eq : sys.equations) eqs.push_back({eq.poly, {eq.i, eq.j, eq.n}});
  EngineResult result = solve_polynomial_system(std::move(eqs), {}, {}, options.node_budget, "s");

  std::vector<BMatrixFamily> families;
  for (const auto& leaf : result.leaves) {
    BMatrixFamily f = family_from_leaf(sc.dim(), leaf);
    if (!f.generically_nonsingular(options.seed)) continue;
    bool duplicate = false;
    for (const auto& g : families) duplicate = duplicate || same_family(f, g);
    if (!duplicate) families.push_back(std::move(f));
  }
  if (result.budget_exhausted || !result.unresolved.empty()) {
    const std::string why = result.budget_exhausted ? "solver node budget exhausted" : "solver could not resolve some branches";
    throw SolverIncomplete(why, std::move(families), std::move(result.unresolved));
  }
  return families;
}

bool family_contains(const BMatrixFamily& family, const RationalMatrix& m) {
  if (m.rows() != family.dim || m.cols() != family.dim) return false;
  std::vector<std::string> signs;
  for (const auto& p : family.parameters)
    if (p.domain == ParamDomain::Sign) signs.push_back(p.name);
  const size_t combos = size_t{1} << signs.size();
  for (size_t mask = 0; mask < combos; ++mask) {
    std::map<std::string, Polynomial> fixed;
    for (size_t k = 0; k < signs.size(); ++k) fixed[signs[k]] = Polynomial((mask >> k) & 1 ? -1 : 1);
    std::vector<TaggedPolynomial> eqs;
    for (int r = 1; r <= family.dim; ++r)
      for (int c = 1; c <= family.dim; ++c) {
        Polynomial eq = family.entry(r, c).substitute(fixed) - Polynomial(m(r - 1, c - 1));
        if (!eq.is_zero()) eqs.push_back({eq, {r, c}});
      }
    std::vector<Polynomial> nonzero;
    for (const auto& p : family.parameters)
      if (p.domain == ParamDomain::NonZero) nonzero.push_back(Polynomial::variable(p.name));
    for (const auto& p : family.nonzero_conditions) nonzero.push_back(p.substitute(fixed));
    EngineResult r = solve_polynomial_system(std::move(eqs), std::move(nonzero), {}, 10000, "t");
    if (!r.leaves.empty()) return true;
  }
  return false;
}

}  // namespace dcsym
