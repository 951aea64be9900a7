#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "dcsym/catalog.hpp"
#include "dcsym/commands.hpp"

using namespace dcsym;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dcsym_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

const char* kA1 = R"({"name": "mine", "dim": 2, "brackets": [[1, 2, 1, "1"]]})";
const char* kEq = R"({"name": "e", "kind": "ode", "order": 3, "rhs": "y2^2/x - y2/p", "algebra": "alg.alg",
  "generators": [{"label": "X1", "characteristic": "1"}, {"label": "X2", "characteristic": "y - x*p/2"}]})";
const char* kMap = R"({"label": "G1", "layout": "ode", "components": ["i*x", "-y", "i*p"], "B": [["-1", "0"], ["0", "1"]]})";
const char* kEntry = R"({"name": "custom", "equation": "eq.eq", "maps": ["g1.map"],
  "group": {"generators": ["G1"], "expect": {"order": 4, "abelian": true, "element_orders": {"1": 1, "2": 1, "4": 2}}}})";

}  // namespace

TEST_CASE("every bundled entry loads and its basis closes") {
  const auto names = catalog_names();
  CHECK(names.size() == 7);
  for (const auto& n : names) {
    CAPTURE(n);
    const auto e = load_catalog_entry(n);
    CHECK(e.name == n);
    CHECK(e.commutator.pass);
    CHECK(!e.maps.empty());
    CHECK(e.group.has_value());
  }
  const auto algs = catalog_algebra_names();
  CHECK(std::find(algs.begin(), algs.end(), "heat5") != algs.end());
}

TEST_CASE("bundled algebras carry strategies and expected forms") {
  const auto heat = load_algebra("heat5");
  CHECK(heat.sc.dim() == 5);
  CHECK(heat.strategy.has_value());
  CHECK(heat.expected_canonical.size() == 2);
  CHECK(load_algebra("abelian2").sc.dim() == 2);
  CHECK(load_strategy("a1a1").cases.size() == 2);
}

TEST_CASE("heat equation map ordering is chosen by the contact check") {
  const auto e = load_catalog_entry("pde51");
  const auto& g2 = e.map("G2");
  REQUIRE(g2.candidates.size() == 2);
  CHECK(g2.chosen == 0);
  CHECK(g2.candidate_residuals[0] < 1e-10);
  CHECK(g2.candidate_residuals[1] > 1e-3);
}

TEST_CASE("parameterised maps expand to instances") {
  const auto e = load_catalog_entry("ode38");
  const auto& g2 = e.map("G2");
  CHECK(g2.parameter == "n");
  CHECK(g2.instantiate().size() == g2.instances.size());
  CHECK_NOTHROW(e.group_generator("G2[n=1]"));
  CHECK_THROWS_AS(e.group_generator("G7"), InputError);
}

TEST_CASE("negative control moves the first-derivative slot") {
  const auto e = load_catalog_entry("ode31");
  const auto nudged = negative_control(e.map("G1").map, Rational(1, 100));
  const std::vector<Complex> z{0.5, 0.2, 1.0};
  const auto a = e.map("G1").map.evaluate<Complex>(std::span<const Complex>(z));
  const auto b = nudged.evaluate<Complex>(std::span<const Complex>(z));
  CHECK(std::abs(b[2] - a[2] - 0.01) < 1e-15);
  CHECK(std::abs(b[0] - a[0]) == 0);
}

TEST_CASE("entries from files") {
  TempDir d;
  d.write("alg.alg", kA1);
  d.write("eq.eq", kEq);
  d.write("g1.map", kMap);
  const auto path = d.write("entry.json", kEntry);
  const auto e = load_catalog_entry(path);
  CHECK(e.name == "custom");
  CHECK(e.algebra.name == "mine");

  GroupOptions go;
  go.targets = {path};
  const auto r = cmd_group(go);
  CHECK(r.exit_code == kPass);
  CHECK(r.report["entries"][0]["group"] == "Z4");
}

TEST_CASE("load errors are input errors") {
  TempDir d;
  CHECK_THROWS_AS(load_catalog_entry("no_such_entry"), InputError);
  CHECK_THROWS_AS(load_algebra((d.path / "missing.alg").string()), InputError);
  CHECK_THROWS_AS(load_algebra(d.write("bad.alg", "{not json")), InputError);
  // violates Jacobi
  CHECK_THROWS_AS(load_algebra(d.write("j.alg", R"({"name": "j", "dim": 3, "brackets": [[1, 2, 3, "1"], [1, 3, 1, "1"]]})")),
                  InputError);
  CHECK_THROWS_AS(load_map(d.write("m.map", R"({"label": "G", "layout": "ode", "components": ["x", "y"]})")), InputError);
  CHECK_THROWS_AS(load_map(d.write("m2.map", R"({"label": "G", "layout": "ode", "components": ["x", "y", "q"]})")), InputError);
  // generators that do not close on the declared algebra
  d.write("alg.alg", R"({"name": "flip", "dim": 2, "brackets": [[1, 2, 1, "-1"]]})");
  d.write("eq.eq", kEq);
  d.write("g1.map", kMap);
  CHECK_THROWS_AS(load_catalog_entry(d.write("entry.json", kEntry)), InputError);
}

TEST_CASE("verify command") {
  VerifyOptions vo;
  vo.targets = {"ode31"};
  auto r = cmd_verify(vo);
  CHECK(r.exit_code == kPass);
  CHECK(r.report["verdict"] == "pass");
  CHECK(r.report["entries"][0]["checks"].size() == 6);

  vo.all = true;
  vo.targets.clear();
  CHECK(cmd_verify(vo).exit_code == kPass);

  vo.all = false;
  vo.targets = {"ode44"};
  vo.checks = {"uniform", "commutator"};
  CHECK(cmd_verify(vo).exit_code == kPass);

  vo.checks = {"contact", "bogus"};
  CHECK(cmd_verify(vo).exit_code == kInputError);
}

TEST_CASE("verify reports a failing map") {
  TempDir d;
  d.write("alg.alg", kA1);
  d.write("eq.eq", kEq);
  d.write("g1.map", R"({"label": "G1", "layout": "ode", "components": ["i*x", "-y", "i*p + 1/100"], "B": [["-1", "0"], ["0", "1"]]})");
  VerifyOptions vo;
  vo.targets = {d.write("entry.json", R"({"name": "custom", "equation": "eq.eq", "maps": ["g1.map"]})")};
  const auto r = cmd_verify(vo);
  CHECK(r.exit_code == kCheckFailed);
  CHECK(r.report["verdict"] == "fail");
}

TEST_CASE("reports are deterministic for a fixed seed") {
  VerifyOptions vo;
  vo.targets = {"pde51"};
  vo.samples = 20;
  const auto first = cmd_verify(vo);
  CHECK(first.report["entries"][0]["candidates"][0]["chosen"] == 0);
  const auto a = first.report.dump();
  CHECK(a == cmd_verify(vo).report.dump());
  vo.seed = 43;
  CHECK(a != cmd_verify(vo).report.dump());

  AutoOptions ao;
  ao.target = "heat5";
  ao.canonicalize = true;
  CHECK(cmd_auto(ao).report.dump() == cmd_auto(ao).report.dump());
}

TEST_CASE("seed from the environment") {
  ::unsetenv("DCSYM_SEED");
  CHECK(default_seed() == 42);
  CHECK(default_seed(5) == 5);
  ::setenv("DCSYM_SEED", "1234", 1);
  CHECK(default_seed() == 1234);
  ::setenv("DCSYM_SEED", "abc", 1);
  CHECK_THROWS_AS(default_seed(), InputError);
  ::unsetenv("DCSYM_SEED");
}

TEST_CASE("group command exit codes") {
  GroupOptions go;
  go.targets = {"ode38"};
  const auto r = cmd_group(go);
  CHECK(r.exit_code == kUnbounded);
  CHECK(r.report["entries"][0]["derived_relations"].size() == 1);
  go.targets.clear();
  go.all = true;
  CHECK(cmd_group(go).exit_code == kPass);
  go.all = false;
  go.targets = {"pde51"};
  const auto p = cmd_group(go);
  CHECK(p.exit_code == kPass);
  CHECK(p.report["entries"][0]["group"] == "Z2xZ2");
}

TEST_CASE("auto command") {
  AutoOptions ao;
  ao.target = "a1";
  auto r = cmd_auto(ao);
  CHECK(r.exit_code == kPass);
  CHECK(r.report["runs"][0]["constraints"]["count"] == 2);

  ao.target = "heat5";
  ao.budget = 5;
  ao.solve = true;
  CHECK(cmd_auto(ao).exit_code == kSolverBudget);

  AutoOptions all;
  all.all = true;
  CHECK(cmd_auto(all).exit_code == kPass);

  AutoOptions greedy;
  greedy.target = "a1";
  greedy.canonicalize = true;
  greedy.strategy = "greedy";
  CHECK(cmd_auto(greedy).exit_code == kPass);
}

TEST_CASE("brackets in object form") {
  TempDir d;
  const auto a = load_algebra(d.write("o.alg", R"({"name": "o", "dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": "1"}}]})"));
  CHECK(a.sc(1, 2, 1) == 1);
  CHECK(a.sc(2, 1, 1) == -1);
  CHECK_THROWS_AS(load_algebra(d.write("b.alg", R"({"name": "b", "dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"x": "1"}}]})")),
                  InputError);
  CHECK_THROWS_AS(load_algebra(d.write("r.alg", R"({"name": "r", "dim": 2, "brackets": [{"i": 1, "j": 3, "coeffs": {"1": "1"}}]})")),
                  InputError);
}
