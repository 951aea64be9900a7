#include "dcsym/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "dcsym/catalog.hpp"

namespace dcsym {

namespace {

using ojson = nlohmann::ordered_json;

ojson family_json(const BMatrixFamily& f) {
  ojson rows = ojson::array();
  for (int r = 1; r <= f.dim; ++r) {
    ojson row = ojson::array();
    for (int c = 1; c <= f.dim; ++c) row.push_back(f.entry(r, c).to_string());
    rows.push_back(row);
  }
  ojson params = ojson::array();
  for (const auto& p : f.parameters) params.push_back({{"name", p.name}, {"domain", to_string(p.domain)}});
  ojson conds = ojson::array();
  for (const auto& c : f.nonzero_conditions) conds.push_back(c.to_string() + " != 0");
  return {{"matrix", rows}, {"parameters", params}, {"nonzero", conds}};
}

std::string indent(const std::string& text, const std::string& pad) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) out += pad + line + "\n";
  return out;
}

std::string format_residual(double r) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << r;
  return os.str();
}

bool matches_expected(const std::vector<BMatrixFamily>& got, const std::vector<BMatrixFamily>& expected) {
  if (got.size() != expected.size()) return false;
  std::vector<bool> used(got.size(), false);
  for (const auto& e : expected) {
    bool found = false;
    for (size_t k = 0; k < got.size() && !found; ++k)
      if (!used[k] && equivalent_up_to_renaming(got[k], e)) used[k] = found = true;
    if (!found) return false;
  }
  return true;
}

struct AutoOutcome {
  ojson report;
  std::string text;
  int code = kPass;
};

AutoOutcome auto_one(const std::string& target, const AutoOptions& options) {
  AutoOutcome out;
  std::ostringstream text;
  const AlgebraSpec alg = load_algebra(target);
  out.report["algebra"] = {{"name", alg.name}, {"dim", alg.sc.dim()}, {"source", alg.source}};
  text << "algebra " << alg.name << " (dim " << alg.sc.dim() << ")\n";

  const ConstraintSystem sys = generate_constraints(alg.sc);
  ojson eqs = ojson::array();
  for (const auto& c : sys.equations) eqs.push_back(c.poly.to_string() + " = 0");
  out.report["constraints"] = {{"count", sys.equations.size()}, {"equations", eqs}};
  text << "constraints: " << sys.equations.size() << "\n";
  for (const auto& c : sys.equations) text << "  " << c.poly.to_string() << " = 0\n";

  const bool solve = options.solve || options.canonicalize || options.all;
  if (!solve) {
    out.text = text.str();
    return out;
  }
  std::vector<BMatrixFamily> families;
  try {
    families = solve_families(alg.sc, {options.budget, 7});
  } catch (const SolverIncomplete& e) {
    ojson partial = ojson::array();
    for (const auto& f : e.partial()) partial.push_back(family_json(f));
    out.report["families"] = partial;
    out.report["solver"] = {{"complete", false}, {"message", e.what()}, {"unresolved", e.unresolved()}};
    text << "solver incomplete: " << e.what() << "\n";
    out.text = text.str();
    out.code = kSolverBudget;
    return out;
  }
  ojson fams = ojson::array();
  for (const auto& f : families) fams.push_back(family_json(f));
  out.report["families"] = fams;
  text << "families: " << families.size() << "\n";
  for (const auto& f : families) text << indent(f.to_pretty_string(), "  ") << "\n";

  if (!(options.canonicalize || options.all)) {
    out.text = text.str();
    return out;
  }
  std::vector<BMatrixFamily> canonical;
  std::string strategy_name;
  if (options.strategy == "greedy" || (options.strategy.empty() && !alg.strategy)) {
    strategy_name = "greedy";
    for (const auto& f : families) {
      const BMatrixFamily g = canonicalize_greedy(alg.sc, f);
      if (std::none_of(canonical.begin(), canonical.end(), [&](const auto& c) { return equivalent_up_to_renaming(c, g); }))
        canonical.push_back(g);
    }
  } else {
    const Strategy s = options.strategy.empty() ? *alg.strategy : load_strategy(options.strategy);
    strategy_name = s.name.empty() ? options.strategy : s.name;
    canonical = canonicalize(alg.sc, families, s);
  }
  ojson canon = ojson::array();
  for (const auto& f : canonical) canon.push_back(family_json(f));
  out.report["strategy"] = strategy_name;
  out.report["canonical"] = canon;
  text << "canonical (" << strategy_name << "): " << canonical.size() << "\n";
  for (const auto& f : canonical) text << indent(f.to_pretty_string(), "  ") << "\n";
  if (!alg.expected_canonical.empty()) {
    const bool ok = matches_expected(canonical, alg.expected_canonical);
    out.report["matches_expected"] = ok;
    text << "expected canonical forms: " << (ok ? "match" : "MISMATCH") << "\n";
    if (!ok) out.code = kCheckFailed;
  }
  out.text = text.str();
  return out;
}

ojson error_json(const std::string& target, const std::string& message) {
  return {{"target", target}, {"error", message}};
}

ojson header(const std::string& echo) {
  ojson r;
  r["command"] = echo;
  return r;
}

std::string verdict(int code) {
  switch (code) {
    case kPass:
      return "pass";
    case kCheckFailed:
      return "fail";
    case kInputError:
      return "input error";
    case kSolverBudget:
      return "solver budget exceeded";
    case kUnbounded:
      return "unbounded";
  }
  return "fail";
}

// Input errors outrank budget and unbounded outcomes, which outrank check failures.
int combine(int a, int b) {
  auto rank = [](int c) { return c == kInputError ? 4 : c == kSolverBudget ? 3 : c == kUnbounded ? 2 : c; };
  return rank(a) >= rank(b) ? a : b;
}

ojson check_json(const VerificationReport& r, const std::string& map) {
  ojson j;
  j["check"] = r.check;
  j["map"] = map;
  j["samples"] = r.sample_count;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  j["skipped"] = r.skipped.size();
  j["pass"] = r.pass;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

struct MapUnderTest {
  ContactMap map;
  std::optional<RationalMatrix> b;
};

std::vector<MapUnderTest> maps_for(const CatalogEntry& entry, const std::string& selector) {
  std::vector<MapUnderTest> out;
  if (selector == "identity") {
    out.push_back({ContactMap::identity(entry.equation.layout), RationalMatrix::identity(entry.algebra.sc.dim())});
    out.back().map.label = "identity";
    return out;
  }
  std::vector<MapSpec> specs;
  if (selector.empty()) {
    specs = entry.maps;
  } else {
    bool found = false;
    for (const auto& m : entry.maps)
      if (m.map.label == selector) {
        specs.push_back(m);
        found = true;
      }
    if (!found) specs.push_back(load_map(selector));
  }
  for (const auto& spec : specs) {
    if (spec.map.layout.variables() != entry.equation.layout.variables())
      throw InputError(spec.source + ": layout does not match the equation");
    const auto instances = spec.instantiate();
    for (size_t k = 0; k < instances.size(); ++k) {
      ContactMap m = instances[k];
      if (!spec.parameter.empty()) m.label = spec.map.label + "[" + spec.parameter + "=" + to_string(spec.instances[k]) + "]";
      out.push_back({m, spec.b});
    }
  }
  return out;
}

}  // namespace

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("DCSYM_SEED");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw InputError("DCSYM_SEED must be a non-negative integer");
  return v;
}

RunResult cmd_auto(const AutoOptions& options) {
  RunResult result;
  result.report = header(options.echo);
  std::vector<std::string> targets;
  if (options.all)
    targets = catalog_algebra_names();
  else
    targets.push_back(options.target);
  ojson runs = ojson::array();
  std::ostringstream text;
  int code = kPass;
  for (const auto& t : targets) {
    try {
      AutoOutcome o = auto_one(t, options);
      runs.push_back(o.report);
      text << o.text;
      code = combine(code, o.code);
    } catch (const InputError& e) {
      runs.push_back(error_json(t, e.what()));
      text << "error: " << e.what() << "\n";
      code = combine(code, kInputError);
    }
    if (targets.size() > 1) text << "\n";
  }
  result.report["runs"] = runs;
  result.report["verdict"] = verdict(code);
  text << "verdict: " << verdict(code) << "\n";
  result.text = text.str();
  result.exit_code = code;
  return result;
}

RunResult cmd_verify(const VerifyOptions& options) {
  RunResult result;
  result.report = header(options.echo);
  result.report["seed"] = options.seed;
  result.report["samples"] = options.samples;
  result.report["tolerance"] = options.tolerance;
  std::vector<std::string> targets = options.all ? catalog_names() : options.targets;
  std::ostringstream text;
  int code = kPass;
  ojson entries = ojson::array();

  SampleOptions sample;
  sample.seed = options.seed;
  sample.samples = options.samples;
  sample.tolerance = options.tolerance;

  for (const auto& check : options.checks)
    if (check != "contact" && check != "symmetry" && check != "determining" && check != "uniform" && check != "commutator") {
      result.report["error"] = "unknown check '" + check + "'";
      result.report["verdict"] = verdict(kInputError);
      result.text = "error: unknown check '" + check + "'\n";
      result.exit_code = kInputError;
      return result;
    }

  for (const auto& t : targets) {
    ojson ej;
    try {
      const CatalogEntry entry = load_catalog_entry(t);
      const auto maps = maps_for(entry, options.map);
      ej["name"] = entry.name;
      ej["equation"] = entry.equation.rhs_text;
      ojson checks = ojson::array();
      bool entry_pass = true;
      text << entry.name << ": " << (entry.equation.is_pde() ? "u_tt = " : "y^(" + std::to_string(entry.equation.order) + ") = ")
           << entry.equation.rhs_text << "\n";
      ojson choices = ojson::array();
      for (const auto& m : entry.maps) {
        if (m.candidates.empty()) continue;
        choices.push_back({{"map", m.map.label}, {"chosen", m.chosen}, {"contact_residuals", m.candidate_residuals}});
        text << "  " << m.map.label << ": candidate " << m.chosen + 1 << " of " << m.candidates.size()
             << " passes the contact check (residuals";
        for (double r : m.candidate_residuals) text << " " << format_residual(r);
        text << ")\n";
      }
      if (!choices.empty()) ej["candidates"] = choices;
      auto record =[&](const VerificationReport& r, const std::string& label) {
        checks.push_back(check_json(r, label));
        entry_pass = entry_pass && r.pass;
        text << "  " << std::left << std::setw(14) << r.check << std::setw(12) << label << std::right
             << (r.pass ? "pass" : "FAIL") << "  max " << format_residual(r.max_residual) << "  samples " << r.sample_count;
        if (!r.skipped.empty()) text << "  skipped " << r.skipped.size();
        if (!r.note.empty()) text << "  (" << r.note << ")";
        text << "\n";
      };
      auto skip = [&](const std::string& check, const std::string& label, const std::string& why) {
        checks.push_back({{"check", check}, {"map", label}, {"status", "skipped"}, {"note", why}});
        text << "  " << std::left << std::setw(14) << check << std::setw(12) << label << std::right << "skipped  (" << why
             << ")\n";
      };
      for (const auto& check : options.checks) {
        if (check == "commutator") {
          record(commutator_check(entry.equation.generators, entry.algebra.sc, sample), "basis");
          continue;
        }
        for (const auto& m : maps) {
          const std::string& label = m.map.label;
          if (check == "contact") {
            record(entry.equation.is_pde() ? pde_contact_residual(m.map, sample) : contact_residual(m.map, sample), label);
          } else if (check == "symmetry") {
            record(entry.equation.is_pde() ? pde_symmetry_residual(*entry.equation.pde, m.map, sample)
                                           : symmetry_residual(*entry.equation.ode, m.map, sample),
                   label);
          } else if (check == "determining") {
            if (!m.b) {
              skip(check, label, "no B matrix declared");
              continue;
            }
            record(determining_residual(entry.equation.generators, to_real(*m.b), m.map, sample), label);
          } else if (check == "uniform") {
            if (entry.equation.is_pde()) {
              skip(check, label, "uniformity is defined for ODE maps only");
              continue;
            }
            UniformityReport u = is_uniform(m.map, sample);
            std::ostringstream k;
            k << u.k.real();
            if (u.k.imag() != 0) k << (u.k.imag() > 0 ? "+" : "") << u.k.imag() << "i";
            if (u.report.note.empty()) u.report.note = "k = " + k.str();
            record(u.report, label);
            checks.back()["k"] = k.str();
          }
        }
      }
      ej["checks"] = checks;
      ej["pass"] = entry_pass;
      if (!entry_pass) code = combine(code, kCheckFailed);
    } catch (const InputError& e) {
      ej = error_json(t, e.what());
      text << "error: " << e.what() << "\n";
      code = combine(code, kInputError);
    }
    entries.push_back(ej);
  }
  result.report["entries"] = entries;
  result.report["verdict"] = verdict(code);
  text << "verdict: " << verdict(code) << "\n";
  result.text = text.str();
  result.exit_code = code;
  return result;
}

namespace {

// Pairs (a, b) with a^2 = e, b of infinite order and (ab)^2 = e, so that
// a b a = b^-1: the closure is infinite dihedral.
std::vector<std::string> dihedral_relations(const GroupSamples& samples, const std::vector<ContactMap>& gens,
                                            const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  std::vector<GroupElement> el;
  for (size_t k = 0; k < gens.size(); ++k) el.push_back(samples.element(gens[k], labels[k]));
  for (size_t a = 0; a < el.size(); ++a)
    for (size_t b = 0; b < el.size(); ++b) {
      if (a == b || element_order(samples, el[a], 2) != 2 || element_order(samples, el[b], 24)) continue;
      if (element_order(samples, samples.product(el[a], el[b]), 2) == 2)
        out.push_back(labels[a] + " " + labels[b] + " " + labels[a] + " = " + labels[b] + "^-1 (infinite dihedral)");
    }
  return out;
}

}  // namespace

RunResult cmd_group(const GroupOptions& options) {
  RunResult result;
  result.report = header(options.echo);
  result.report["seed"] = options.seed;
  std::vector<std::string> targets = options.all ? catalog_names() : options.targets;
  std::ostringstream text;
  int code = kPass;
  ojson entries = ojson::array();
  for (const auto& t : targets) {
    ojson ej;
    try {
      const CatalogEntry entry = load_catalog_entry(t);
      ej["name"] = entry.name;
      if (!entry.group) throw InputError(entry.name + ": no group generators declared");
      const GroupExpectation& ge = *entry.group;
      const int max_size = options.max_size > 0 ? options.max_size : ge.max_size;
      std::vector<ContactMap> gens;
      for (const auto& ref : ge.generators) gens.push_back(entry.group_generator(ref));
      ej["generators"] = ge.generators;
      ej["max_size"] = max_size;
      text << entry.name << ": closure of {";
      for (size_t k = 0; k < ge.generators.size(); ++k) text << (k ? ", " : "") << ge.generators[k];
      text << "}\n";
      const GroupSamples samples(entry.equation.layout, options.seed);
      try {
        const CayleyTable table = closure_and_table(samples, gens, max_size);
        const Fingerprint f = table.fingerprint();
        ej["unbounded"] = false;
        ej["order"] = f.order;
        ej["abelian"] = f.abelian;
        ojson orders;
        for (const auto& [o, n] : f.order_multiset) orders[std::to_string(o)] = n;
        ej["element_orders"] = orders;
        ej["fingerprint"] = f.to_string();
        ej["group"] = f.name();
        ej["latin_square"] = table.latin_square();
        ojson elements = ojson::array();
        for (size_t k = 0; k < table.elements.size(); ++k)
          elements.push_back({{"index", k}, {"word", table.elements[k].word}, {"order", table.orders[k]},
                              {"inverse", table.inverses[k]}});
        ej["elements"] = elements;
        ej["table"] = table.table;
        text << table.to_text() << "fingerprint: " << f.to_string();
        if (!f.name().empty()) text << " (" << f.name() << ")";
        text << "\n";
        bool ok = table.latin_square();
        if (ge.fingerprint || ge.unbounded) {
          const bool match = ge.fingerprint && *ge.fingerprint == f;
          ej["expected"] = ge.fingerprint ? ge.fingerprint->to_string() : "unbounded";
          ej["matches_expected"] = match;
          text << "expected: " << (ge.fingerprint ? ge.fingerprint->to_string() : "unbounded") << " -> "
               << (match ? "match" : "MISMATCH") << "\n";
          ok = ok && match;
        }
        ej["pass"] = ok;
        if (!ok) code = combine(code, kCheckFailed);
      } catch (const UnboundedGroup& e) {
        ej["unbounded"] = true;
        ej["orbit_size"] = e.orbit_size();
        ej["message"] = e.what();
        text << "unbounded: " << e.what() << " (orbit reached " << e.orbit_size() << " elements)\n";
        const auto relations = dihedral_relations(samples, gens, ge.generators);
        if (!relations.empty()) {
          ej["derived_relations"] = relations;
          for (const auto& r : relations) text << "derived relation (sample-based): " << r << "\n";
        }
        if (ge.fingerprint || ge.unbounded) {
          ej["expected"] = ge.fingerprint ? ge.fingerprint->to_string() : "unbounded";
          ej["matches_expected"] = ge.unbounded;
          text << "expected: " << (ge.fingerprint ? ge.fingerprint->to_string() : "unbounded") << " -> "
               << (ge.unbounded ? "match" : "MISMATCH") << "\n";
        }
        // A declared unbounded group is a pass when the whole catalog runs.
        if (!(options.all && ge.unbounded)) code = combine(code, kUnbounded);
      }
    } catch (const InputError& e) {
      ej = error_json(t, e.what());
      text << "error: " << e.what() << "\n";
      code = combine(code, kInputError);
    } catch (const EvalError& e) {
      ej["error"] = e.what();
      text << "error: " << e.what() << "\n";
      code = combine(code, kCheckFailed);
    }
    entries.push_back(ej);
  }
  result.report["entries"] = entries;
  result.report["verdict"] = verdict(code);
  text << "verdict: " << verdict(code) << "\n";
  result.text = text.str();
  result.exit_code = code;
  return result;
}

}  // namespace dcsym
