#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <set>

#include "dcsym/auto_solve.hpp"

using namespace dcsym;

namespace {

StructureConstants a1() {
  StructureConstants sc(2);
  sc.set_bracket(1, 2, 1, 1);
  return sc;
}

StructureConstants a1a1() {
  StructureConstants sc(4);
  sc.set_bracket(1, 2, 1, 1);
  sc.set_bracket(3, 4, 3, 1);
  return sc;
}

StructureConstants heat5() {
  StructureConstants sc(5);
  sc.set_bracket(1, 4, 4, -1);
  sc.set_bracket(2, 5, 2, -1);
  sc.set_bracket(3, 5, 3, 1);
  sc.set_bracket(4, 5, 4, 1);
  return sc;
}

// Independent enumeration of nonsingular B with entries from `values`
// satisfying sum c_lm^n b_il b_jm = sum c_ij^k b_kn, by backtracking over
// row-major entries and testing each equation once its entries are fixed.
struct Oracle {
  int n;
  std::vector<long> c;  // c[(i*n + j)*n + k], 0-based
  struct Eq {
    int i, j, col, ready;
  };
  std::vector<Eq> eqs;
  std::vector<int> values;
  std::vector<std::vector<int>> found;

  Oracle(const StructureConstants& sc, std::vector<int> vals) : n(sc.dim()), values(std::move(vals)) {
    c.assign(static_cast<size_t>(n * n * n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) c[static_cast<size_t>((i * n + j) * n + k)] = sc(i + 1, j + 1, k + 1).get_num().get_si();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int col = 0; col < n; ++col) {
          int ready = j * n + n - 1;
          for (int k = 0; k < n; ++k)
            if (cc(i, j, k) != 0) ready = std::max(ready, k * n + col);
          eqs.push_back({i, j, col, ready});
        }
  }
  long cc(int i, int j, int k) const { return c[static_cast<size_t>((i * n + j) * n + k)]; }

  bool holds(const std::vector<int>& b, const Eq& e) const {
    long lhs = 0, rhs = 0;
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) lhs += cc(l, m, e.col) * b[static_cast<size_t>(e.i * n + l)] * b[static_cast<size_t>(e.j * n + m)];
    for (int k = 0; k < n; ++k) rhs += cc(e.i, e.j, k) * b[static_cast<size_t>(k * n + e.col)];
    return lhs == rhs;
  }

  void run() {
    std::vector<int> b(static_cast<size_t>(n * n), 0);
    recurse(b, 0);
  }

  void recurse(std::vector<int>& b, int pos) {
    if (pos == n * n) {
      Eigen::MatrixXd m(n, n);
      for (int r = 0; r < n; ++r)
        for (int q = 0; q < n; ++q) m(r, q) = b[static_cast<size_t>(r * n + q)];
      if (std::abs(m.determinant()) > 0.5) found.push_back(b);
      return;
    }
    for (int v : values) {
      b[static_cast<size_t>(pos)] = v;
      bool ok = true;
      for (const auto& e : eqs)
        if (e.ready == pos && !holds(b, e)) {
          ok = false;
          break;
        }
      if (ok) recurse(b, pos + 1);
    }
  }
};

RationalMatrix to_matrix(const std::vector<int>& b, int n) {
  RationalMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int q = 0; q < n; ++q) m(r, q) = b[static_cast<size_t>(r * n + q)];
  return m;
}

Parameter sign(const std::string& n) { return {n, ParamDomain::Sign}; }
Parameter nonzero(const std::string& n) { return {n, ParamDomain::NonZero}; }
Parameter real(const std::string& n) { return {n, ParamDomain::Real}; }

bool contains_equivalent(const std::vector<BMatrixFamily>& fams, const BMatrixFamily& f) {
  return std::any_of(fams.begin(), fams.end(), [&](const auto& g) { return equivalent_up_to_renaming(g, f); });
}

Strategy a1_strategy() { return {"a1", {{{{1, 1}}, {}, {{1, "b21/b11"}, {2, "-ln(abs(b11))"}}}}}; }

Strategy a1a1_strategy() {
  return {"a1a1",
          {{{{1, 1}}, {}, {{1, "b21/b11"}, {2, "-ln(abs(b11))"}, {3, "b43/b33"}, {4, "-ln(abs(b33))"}}},
           {{{1, 3}}, {}, {{1, "b23/b13"}, {3, "b41/b31"}, {2, "-ln(abs(b13))"}, {4, "-ln(abs(b31))"}}}}};
}

Strategy heat5_strategy() {
  return {"heat5",
          {{{{2, 2}},
            {},
            {{2, "-b52/b22"}, {3, "b53/b33"}, {4, "b14/b44"}, {5, "-ln(abs(b33))"}, {1, "-ln(abs(b44))"}}},
           {{{2, 3}},
            {},
            {{2, "-b53/b23"}, {3, "b52/b32"}, {4, "b14/b44"}, {5, "-ln(abs(b32))"}, {1, "-ln(abs(b44))"}}}}};
}

}  // namespace

TEST_CASE("a(1) constraints reduce to two equations") {
  const auto sys = generate_constraints(a1());
  REQUIRE(sys.equations.size() == 2);
  const Polynomial b11 = Polynomial::variable("b11"), b12 = Polynomial::variable("b12"),
                   b21 = Polynomial::variable("b21"), b22 = Polynomial::variable("b22");
  const Polynomial first = b11 * b22 - b12 * b21 - b11;
  std::set<std::string> got;
  for (const auto& e : sys.equations) got.insert(e.poly.monic().to_string());
  CHECK(got.count(first.monic().to_string()) == 1);
  CHECK(got.count(b12.monic().to_string()) == 1);
}

TEST_CASE("constraint counts") {
  CHECK(generate_constraints(StructureConstants(2)).equations.empty());
  CHECK(generate_constraints(a1a1()).equations.size() == 16);
}

TEST_CASE("constraint residual at exact and numeric matrices") {
  const auto sys = generate_constraints(a1());
  RationalMatrix b(2, 2);
  b(0, 0) = Rational(3, 2);
  b(1, 0) = -4;
  b(1, 1) = 1;
  CHECK(constraint_residual(b, sys) == 0);
  b(1, 1) = 2;
  CHECK(constraint_residual(b, sys) != 0);
  CHECK(constraint_residual(to_real(b), sys) > 0.1);
}

TEST_CASE("abelian algebra: one unconstrained family") {
  const auto fams = solve_families(StructureConstants(2));
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].parameters.size() == 4);
  for (const auto& p : fams[0].parameters) CHECK(p.domain == ParamDomain::Real);
}

TEST_CASE("a(1): one family [[b11,0],[b21,1]]") {
  const auto fams = solve_families(a1());
  REQUIRE(fams.size() == 1);
  const auto expected = make_family({{"b11", "0"}, {"b21", "1"}}, {nonzero("b11"), real("b21")});
  CHECK(equivalent_up_to_renaming(fams[0], expected));
}

TEST_CASE("a1+a1: block and swap families") {
  const auto fams = solve_families(a1a1());
  REQUIRE(fams.size() == 2);
  const auto block = make_family({{"b11", "0", "0", "0"}, {"b21", "1", "0", "0"}, {"0", "0", "b33", "0"}, {"0", "0", "b43", "1"}},
                                 {nonzero("b11"), real("b21"), nonzero("b33"), real("b43")});
  const auto swap = make_family({{"0", "0", "b13", "0"}, {"0", "0", "b23", "1"}, {"b31", "0", "0", "0"}, {"b41", "1", "0", "0"}},
                                {nonzero("b13"), real("b23"), nonzero("b31"), real("b41")});
  CHECK(contains_equivalent(fams, block));
  CHECK(contains_equivalent(fams, swap));
}

TEST_CASE("heat algebra: two families") {
  const auto fams = solve_families(heat5());
  REQUIRE(fams.size() == 2);
  const auto diag = make_family({{"1", "0", "0", "b54", "0"},
                                 {"0", "b22", "0", "0", "0"},
                                 {"0", "0", "b33", "0", "0"},
                                 {"0", "0", "0", "b44", "0"},
                                 {"0", "b52", "b53", "b54", "1"}},
                                {real("b54"), nonzero("b22"), nonzero("b33"), nonzero("b44"), real("b52"), real("b53")});
  const auto swap = make_family({{"1", "0", "0", "b54", "0"},
                                 {"0", "0", "b23", "0", "0"},
                                 {"0", "b32", "0", "0", "0"},
                                 {"0", "0", "0", "b44", "0"},
                                 {"2", "b52", "b53", "b54", "-1"}},
                                {real("b54"), nonzero("b23"), nonzero("b32"), nonzero("b44"), real("b52"), real("b53")});
  CHECK(contains_equivalent(fams, diag));
  CHECK(contains_equivalent(fams, swap));
}

TEST_CASE("random family instances satisfy the constraints exactly") {
  for (const auto& sc : {a1(), a1a1(), heat5()}) {
    const auto sys = generate_constraints(sc);
    for (const auto& f : solve_families(sc))
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const RationalMatrix b = f.instantiate(f.random_instance(seed));
        CHECK(constraint_residual(b, sys) == 0);
        CHECK(b.determinant() != 0);
      }
  }
}

TEST_CASE("oracle completeness: every {-1,0,1} automorphism lies in a family") {
  for (const auto& sc : {a1(), a1a1(), heat5()}) {
    Oracle oracle(sc, {-1, 0, 1});
    oracle.run();
    const auto fams = solve_families(sc);
    CAPTURE(sc.dim());
    CHECK(!oracle.found.empty());
    for (const auto& b : oracle.found) {
      const RationalMatrix m = to_matrix(b, sc.dim());
      const bool covered = std::any_of(fams.begin(), fams.end(), [&](const auto& f) { return family_contains(f, m); });
      CHECK(covered);
    }
  }
}

TEST_CASE("support patterns of small automorphisms of a1+a1 fit the families") {
  Oracle oracle(a1a1(), {-1, 0, 1, 2});
  oracle.run();
  const auto fams = solve_families(a1a1());
  std::set<std::vector<bool>> patterns;
  for (const auto& b : oracle.found) {
    std::vector<bool> s;
    for (int v : b) s.push_back(v != 0);
    patterns.insert(s);
  }
  std::vector<int> hits(fams.size(), 0);
  for (const auto& pat : patterns) {
    int matched = 0;
    for (size_t k = 0; k < fams.size(); ++k) {
      const auto sup = fams[k].support();
      bool inside = true;
      for (size_t e = 0; e < pat.size(); ++e) inside = inside && (!pat[e] || sup[e]);
      if (inside) {
        ++matched;
        ++hits[k];
      }
    }
    CHECK(matched >= 1);
  }
  for (int h : hits) CHECK(h > 0);
}

TEST_CASE("family_contains rejects matrices outside the family") {
  const auto fams = solve_families(a1());
  RationalMatrix m(2, 2);
  m(0, 0) = 2;
  m(1, 0) = 5;
  m(1, 1) = 1;
  CHECK(family_contains(fams[0], m));
  m(1, 1) = -1;
  CHECK_FALSE(family_contains(fams[0], m));
  m(1, 1) = 1;
  m(0, 0) = 0;
  CHECK_FALSE(family_contains(fams[0], m));
}

TEST_CASE("solver budget exhaustion keeps partial results") {
  SolverOptions opts;
  opts.node_budget = 5;
  try {
    solve_families(heat5(), opts);
    FAIL("expected SolverIncomplete");
  } catch (const SolverIncomplete& e) {
    CHECK(std::string(e.what()).find("budget") != std::string::npos);
  }
}

TEST_CASE("engine: quadratic conditions introduce signs") {
  const Polynomial x = Polynomial::variable("x");
  const auto r = solve_polynomial_system({{x * x - 1, {0}}}, {}, {}, 1000);
  CHECK(r.unresolved.empty());
  REQUIRE(r.leaves.size() == 1);
  const Polynomial v = r.leaves[0].substitution.at("x");
  REQUIRE(v.variables().size() == 1);
  CHECK(r.leaves[0].signs.count(*v.variables().begin()) == 1);
}

TEST_CASE("engine: products branch") {
  const Polynomial x = Polynomial::variable("x"), y = Polynomial::variable("y");
  const auto r = solve_polynomial_system({{x * y, {0}}}, {}, {}, 1000);
  CHECK(r.unresolved.empty());
  CHECK(r.leaves.size() == 2);
  const auto r2 = solve_polynomial_system({{x * y, {0}}}, {x}, {}, 1000);
  REQUIRE(r2.leaves.size() == 1);
  CHECK(r2.leaves[0].substitution.at("y").is_zero());
}

TEST_CASE("engine: negative squares have no real solution") {
  const Polynomial x = Polynomial::variable("x");
  const auto r = solve_polynomial_system({{x * x + 1, {0}}}, {}, {}, 1000);
  CHECK(r.leaves.empty());
}

TEST_CASE("canonical forms with the bundled strategies") {
  SUBCASE("a(1)") {
    const auto c = canonicalize(a1(), solve_families(a1()), a1_strategy());
    REQUIRE(c.size() == 1);
    CHECK(equivalent_up_to_renaming(c[0], make_family({{"alpha", "0"}, {"0", "1"}}, {sign("alpha")})));
  }
  SUBCASE("a1+a1") {
    const auto c = canonicalize(a1a1(), solve_families(a1a1()), a1a1_strategy());
    REQUIRE(c.size() == 2);
    CHECK(contains_equivalent(c, make_family({{"alpha", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "beta", "0"}, {"0", "0", "0", "1"}},
                                             {sign("alpha"), sign("beta")})));
    CHECK(contains_equivalent(c, make_family({{"0", "0", "alpha", "0"}, {"0", "0", "0", "1"}, {"beta", "0", "0", "0"}, {"0", "1", "0", "0"}},
                                             {sign("alpha"), sign("beta")})));
  }
  SUBCASE("heat") {
    const auto c = canonicalize(heat5(), solve_families(heat5()), heat5_strategy());
    REQUIRE(c.size() == 2);
    CHECK(contains_equivalent(c, make_family({{"1", "0", "0", "0", "0"},
                                              {"0", "b", "0", "0", "0"},
                                              {"0", "0", "alpha", "0", "0"},
                                              {"0", "0", "0", "beta", "0"},
                                              {"0", "0", "0", "0", "1"}},
                                             {nonzero("b"), sign("alpha"), sign("beta")})));
    CHECK(contains_equivalent(c, make_family({{"1", "0", "0", "0", "0"},
                                              {"0", "0", "b", "0", "0"},
                                              {"0", "alpha", "0", "0", "0"},
                                              {"0", "0", "0", "beta", "0"},
                                              {"2", "0", "0", "0", "-1"}},
                                             {nonzero("b"), sign("alpha"), sign("beta")})));
  }
}

TEST_CASE("canonical families are still automorphisms") {
  const std::vector<std::pair<StructureConstants, Strategy>> cases{
      {a1(), a1_strategy()}, {a1a1(), a1a1_strategy()}, {heat5(), heat5_strategy()}};
  for (const auto& [sc, strategy] : cases) {
    const auto sys = generate_constraints(sc);
    for (const auto& f : canonicalize(sc, solve_families(sc), strategy))
      for (std::uint64_t seed = 1; seed <= 8; ++seed) CHECK(constraint_residual(f.instantiate(f.random_instance(seed)), sys) == 0);
  }
}

TEST_CASE("strategy with no matching case is rejected") {
  const Strategy bad{"bad", {{{{1, 2}}, {}, {{1, "b21/b11"}}}}};
  CHECK_THROWS_AS(canonicalize(a1(), solve_families(a1()), bad), StrategyError);
}

TEST_CASE("greedy reduction reproduces the small cases") {
  const auto g = canonicalize_greedy(a1(), solve_families(a1())[0]);
  CHECK(equivalent_up_to_renaming(g, make_family({{"alpha", "0"}, {"0", "1"}}, {sign("alpha")})));
  for (const auto& f : solve_families(a1a1())) {
    const auto r = canonicalize_greedy(a1a1(), f);
    for (const auto& p : r.parameters) CHECK(p.domain == ParamDomain::Sign);
  }
}

TEST_CASE("renaming equivalence") {
  const auto d1 = make_family({{"alpha", "0"}, {"0", "beta"}}, {sign("alpha"), sign("beta")});
  const auto d2 = make_family({{"beta", "0"}, {"0", "alpha"}}, {sign("alpha"), sign("beta")});
  const auto d3 = make_family({{"-alpha", "0"}, {"0", "beta"}}, {sign("alpha"), sign("beta")});
  const auto d4 = make_family({{"alpha", "0"}, {"0", "1"}}, {sign("alpha")});
  const auto d5 = make_family({{"a", "0"}, {"0", "b"}}, {nonzero("a"), sign("b")});
  CHECK(equivalent_up_to_renaming(d1, d2));
  CHECK(equivalent_up_to_renaming(d1, d3));
  CHECK_FALSE(equivalent_up_to_renaming(d1, d4));
  CHECK_FALSE(equivalent_up_to_renaming(d1, d5));
}

TEST_CASE("parameter absorption") {
  const auto f = make_family({{"2*b11", "0"}, {"0", "1"}}, {nonzero("b11")});
  const auto s = simplify_parameters(f);
  CHECK(equivalent_up_to_renaming(s, make_family({{"b11", "0"}, {"0", "1"}}, {nonzero("b11")})));
  const auto g = make_family({{"alpha*beta", "0"}, {"0", "1"}}, {sign("alpha"), sign("beta")});
  CHECK(equivalent_up_to_renaming(simplify_parameters(g), make_family({{"alpha", "0"}, {"0", "1"}}, {sign("alpha")})));
}

TEST_CASE("a(1) pipeline is fast") {
  const auto start = std::chrono::steady_clock::now();
  canonicalize(a1(), solve_families(a1()), a1_strategy());
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 1.0);
}
