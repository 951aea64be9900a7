#include "dcsym/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dcsym {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

const std::string kPrefix = "catalog:";

bool is_embedded(const std::string& path) { return path.rfind(kPrefix, 0) == 0; }

std::string resolve(const std::string& from, const std::string& relative) {
  if (is_embedded(from)) {
    const fs::path dir = fs::path(from.substr(kPrefix.size())).parent_path();
    return kPrefix + (dir / relative).lexically_normal().generic_string();
  }
  if (fs::path(relative).is_absolute()) return relative;
  return (fs::path(from).parent_path() / relative).lexically_normal().string();
}

json parse_json(const std::string& path) {
  const std::string text = read_source(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(where + ": field '" + key + "': " + e.what());
  }
}

Rational rational_of(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InputError(where + ": expected an exact number (integer or string)");
}

RationalMatrix matrix_of(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) throw InputError(where + ": matrix must be a non-empty array of rows");
  const int n = static_cast<int>(rows.size());
  RationalMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = rows[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw InputError(where + ": matrix must be square");
    for (int c = 0; c < n; ++c) m(r, c) = rational_of(row[static_cast<size_t>(c)], where);
  }
  return m;
}

JetLayout layout_of(const std::string& name, const std::string& where) {
  if (name == "ode") return JetLayout::ode();
  if (name == "pde") return JetLayout::pde();
  throw InputError(where + ": unknown layout '" + name + "' (expected ode or pde)");
}

Strategy strategy_of(const json& j, const std::string& where) {
  Strategy s;
  s.name = j.value("name", "");
  for (const auto& c : field<json>(j, "cases", where)) {
    StrategyCase sc;
    for (const auto& e : c.value("when_nonzero", json::array())) sc.when_nonzero.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& e : c.value("when_zero", json::array())) sc.when_zero.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& st : field<json>(c, "steps", where))
      sc.steps.push_back({field<int>(st, "generator", where), field<std::string>(st, "epsilon", where)});
    s.cases.push_back(std::move(sc));
  }
  return s;
}

BMatrixFamily family_of(const json& j, const std::string& where) {
  std::vector<Parameter> params;
  for (const auto& p : j.value("parameters", json::array()))
    params.push_back({field<std::string>(p, "name", where), parse_domain(field<std::string>(p, "domain", where))});
  return make_family(field<std::vector<std::vector<std::string>>>(j, "rows", where), params);
}

AlgebraSpec algebra_from(const json& j, const std::string& source) {
  AlgebraSpec a;
  a.source = source;
  a.name = field<std::string>(j, "name", source);
  const int dim = field<int>(j, "dim", source);
  if (dim < 1) throw InputError(source + ": dim must be positive");
  a.sc = StructureConstants(dim);
  a.sc.name = a.name;
  try {
    for (const auto& b : j.value("brackets", json::array())) {
      // {"i": 1, "j": 2, "coeffs": {"1": "1"}} or [i, j, k, c]
      if (b.is_object()) {
        const int i = field<int>(b, "i", source), jj = field<int>(b, "j", source);
        const json coeffs = field<json>(b, "coeffs", source);
        for (const auto& [k, c] : coeffs.items()) {
          if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
            throw InputError(source + ": coefficient key '" + k + "' is not an index");
          a.sc.set_bracket(i, jj, std::stoi(k), rational_of(c, source));
        }
        continue;
      }
      if (!b.is_array() || b.size() != 4) throw InputError(source + ": bracket entries are [i, j, k, c] or {i, j, coeffs}");
      a.sc.set_bracket(b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), rational_of(b[3], source));
    }
  } catch (const std::out_of_range& e) {
    throw InputError(source + ": " + e.what());
  }
  const auto violations = validate_algebra(a.sc);
  if (!violations.empty()) throw InputError(source + ": " + violations.front().describe());
  if (j.contains("strategy")) a.strategy = strategy_of(j.at("strategy"), source);
  for (const auto& f : j.value("expected_canonical", json::array())) a.expected_canonical.push_back(family_of(f, source));
  return a;
}

MapSpec map_from(const json& j, const std::string& source) {
  MapSpec m;
  m.source = source;
  const auto label = field<std::string>(j, "label", source);
  const JetLayout layout = layout_of(j.value("layout", "ode"), source);
  const auto params = j.value("parameters", std::vector<std::string>{});
  const auto inverse = j.value("inverse", std::vector<std::string>{});
  if (j.contains("components")) {
    m.map = ContactMap::parse(label, layout, field<std::vector<std::string>>(j, "components", source), params, inverse);
  } else {
    const auto cands = field<std::vector<std::vector<std::string>>>(j, "candidates", source);
    SampleOptions options;
    options.samples = 50;
    for (const auto& comps : cands) {
      ContactMap c = ContactMap::parse(label, layout, comps, params, inverse);
      const auto report = layout.n_indep() == 1 ? contact_residual(c, options) : pde_contact_residual(c, options);
      m.candidates.push_back(c);
      m.candidate_residuals.push_back(report.max_residual);
      if (report.pass && m.chosen < 0) m.chosen = static_cast<int>(m.candidates.size()) - 1;
    }
    if (m.chosen < 0) throw InputError(source + ": no candidate ordering of '" + label + "' passes the contact check");
    m.map = m.candidates[static_cast<size_t>(m.chosen)];
  }
  if (j.contains("B")) m.b = matrix_of(j.at("B"), source);
  if (j.contains("instances")) {
    const auto& inst = j.at("instances");
    if (!inst.is_object() || inst.size() != 1) throw InputError(source + ": instances must name one parameter");
    m.parameter = inst.begin().key();
    for (const auto& v : inst.begin().value()) m.instances.push_back(rational_of(v, source));
  }
  for (const auto& p : m.map.parameters)
    if (p != m.parameter) throw InputError(source + ": parameter '" + p + "' has no instances");
  return m;
}

EquationSpec equation_from(const json& j, const std::string& source) {
  EquationSpec e;
  e.source = source;
  e.name = field<std::string>(j, "name", source);
  const auto kind = field<std::string>(j, "kind", source);
  e.rhs_text = field<std::string>(j, "rhs", source);
  if (kind == "ode") {
    e.layout = JetLayout::ode();
    e.order = field<int>(j, "order", source);
    if (e.order < 2) throw InputError(source + ": order must be at least 2");
    e.ode = OdeSpec::parse(e.order, e.rhs_text);
  } else if (kind == "pde") {
    e.layout = JetLayout::pde();
    e.pde = PdeSpec::parse(e.rhs_text);
  } else {
    throw InputError(source + ": unknown equation kind '" + kind + "'");
  }
  for (const auto& g : field<json>(j, "generators", source)) {
    const auto label = field<std::string>(g, "label", source);
    if (g.contains("characteristic"))
      e.generators.push_back(GeneratorSpec::from_characteristic(label, e.layout, g.at("characteristic").get<std::string>()));
    else
      e.generators.push_back(
          GeneratorSpec::from_coefficients(label, e.layout, field<std::vector<std::string>>(g, "coefficients", source)));
  }
  e.algebra_ref = j.value("algebra", "");
  return e;
}

Fingerprint fingerprint_of(const json& j, const std::string& where) {
  Fingerprint f;
  f.order = field<int>(j, "order", where);
  f.abelian = field<bool>(j, "abelian", where);
  const json orders = field<json>(j, "element_orders", where);
  for (const auto& [k, v] : orders.items()) f.order_multiset[std::stoi(k)] = v.get<int>();
  return f;
}

template <class F>
auto with_context(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    throw InputError(where + ": " + msg);
  }
}

std::string algebra_path(const std::string& name_or_path) {
  const auto& files = embedded_catalog_files();
  if (files.count("algebras/" + name_or_path + ".alg")) return kPrefix + "algebras/" + name_or_path + ".alg";
  return name_or_path;
}

json manifest_entry(const std::string& name) {
  const json manifest = parse_json(kPrefix + "manifest.json");
  for (const auto& e : manifest.at("entries"))
    if (e.at("name").get<std::string>() == name) return e;
  return nullptr;
}

}  // namespace

std::string read_source(const std::string& path) {
  if (is_embedded(path)) {
    const auto& files = embedded_catalog_files();
    const auto it = files.find(path.substr(kPrefix.size()));
    if (it == files.end()) throw InputError("no bundled catalog file '" + path + "'");
    return it->second;
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<ContactMap> MapSpec::instantiate() const {
  if (parameter.empty()) return {map};
  std::vector<ContactMap> out;
  for (const auto& v : instances) out.push_back(map.bind(parameter, v));
  return out;
}

const MapSpec& CatalogEntry::map(const std::string& label) const {
  for (const auto& m : maps)
    if (m.map.label == label) return m;
  throw InputError(name + ": no map labelled '" + label + "'");
}

ContactMap CatalogEntry::group_generator(const std::string& ref) const {
  const auto open = ref.find('[');
  if (open == std::string::npos) return map(ref).map;
  const auto eq = ref.find('=', open);
  const auto close = ref.find(']', open);
  if (eq == std::string::npos || close == std::string::npos || close < eq)
    throw InputError(name + ": malformed generator reference '" + ref + "'");
  const MapSpec& m = map(ref.substr(0, open));
  ContactMap bound = m.map.bind(ref.substr(open + 1, eq - open - 1), parse_rational(ref.substr(eq + 1, close - eq - 1)));
  bound.label = ref;
  return bound;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  const json manifest = parse_json(kPrefix + "manifest.json");
  for (const auto& e : manifest.at("entries")) out.push_back(e.at("name").get<std::string>());
  return out;
}

std::vector<std::string> catalog_algebra_names() {
  std::vector<std::string> out;
  for (const auto& [path, text] : embedded_catalog_files())
    if (path.rfind("algebras/", 0) == 0 && path.size() > 13 && path.substr(path.size() - 4) == ".alg")
      out.push_back(path.substr(9, path.size() - 13));
  return out;
}

AlgebraSpec load_algebra(const std::string& name_or_path) {
  const std::string path = algebra_path(name_or_path);
  return with_context(path, [&] { return algebra_from(parse_json(path), path); });
}

Strategy load_strategy(const std::string& name_or_path) {
  const std::string path = algebra_path(name_or_path);
  return with_context(path, [&] {
    const json j = parse_json(path);
    if (j.contains("cases")) return strategy_of(j, path);
    if (!j.contains("strategy")) throw InputError(path + ": no strategy found");
    return strategy_of(j.at("strategy"), path);
  });
}

MapSpec load_map(const std::string& path) {
  return with_context(path, [&] { return map_from(parse_json(path), path); });
}

EquationSpec load_equation(const std::string& path) {
  return with_context(path, [&] { return equation_from(parse_json(path), path); });
}

CatalogEntry load_catalog_entry(const std::string& name_or_path) {
  json j = manifest_entry(name_or_path);
  std::string origin = kPrefix + "manifest.json";
  if (j.is_null()) {
    if (!is_embedded(name_or_path) && !fs::exists(name_or_path))
      throw InputError("'" + name_or_path + "' is neither a catalog entry nor a file");
    j = parse_json(name_or_path);
    origin = name_or_path;
  }
  return with_context(origin, [&] {
    CatalogEntry e;
    e.name = field<std::string>(j, "name", origin);
    e.description = j.value("description", "");
    const std::string eq_path = resolve(origin, field<std::string>(j, "equation", origin));
    e.equation = load_equation(eq_path);
    if (e.equation.algebra_ref.empty()) throw InputError(eq_path + ": missing field 'algebra'");
    e.algebra = load_algebra(resolve(eq_path, e.equation.algebra_ref));
    if (e.algebra.sc.dim() != static_cast<int>(e.equation.generators.size()))
      throw InputError(eq_path + ": generator count does not match the algebra dimension");
    for (const auto& m : j.value("maps", std::vector<std::string>{})) {
      MapSpec spec = load_map(resolve(origin, m));
      if (spec.map.layout.variables() != e.equation.layout.variables())
        throw InputError(spec.source + ": layout does not match the equation");
      if (spec.b && spec.b->rows() != e.algebra.sc.dim()) throw InputError(spec.source + ": B has the wrong size");
      e.maps.push_back(std::move(spec));
    }
    if (j.contains("group")) {
      const json& g = j.at("group");
      GroupExpectation ge;
      ge.generators = field<std::vector<std::string>>(g, "generators", origin);
      ge.max_size = g.value("max_size", 64);
      if (g.contains("expect")) {
        if (g.at("expect").is_string()) {
          if (g.at("expect").get<std::string>() != "unbounded") throw InputError(origin + ": unknown group expectation");
          ge.unbounded = true;
        } else {
          ge.fingerprint = fingerprint_of(g.at("expect"), origin);
        }
      }
      for (const auto& ref : ge.generators) e.group_generator(ref);
      e.group = ge;
    }
    e.commutator = commutator_check(e.equation.generators, e.algebra.sc);
    if (!e.commutator.pass)
      throw InputError(e.name + ": generators fail the commutator check (max residual " +
                       std::to_string(e.commutator.max_residual) + ")");
    return e;
  });
}

ContactMap negative_control(const ContactMap& map, const Rational& amount) {
  return map.perturbed(map.layout.n_indep() + 1, amount);
}

}  // namespace dcsym
