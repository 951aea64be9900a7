#include <doctest.h>

#include "dcsym/group_analysis.hpp"

using namespace dcsym;

namespace {

const JetLayout kOde = JetLayout::ode();

ContactMap m(const std::string& label, std::vector<std::string> c) { return ContactMap::parse(label, kOde, c); }

ContactMap gamma1() { return m("G1", {"i*x", "-y", "i*p"}); }
ContactMap legendre() { return m("G2", {"p", "x*p - y", "x"}); }
ContactMap rot4() { return m("R", {"i*x", "y", "-i*p"}); }
ContactMap rot3() { return m("R", {"exp(2*pi*i/3)*x", "y", "exp(-2*pi*i/3)*p"}); }
ContactMap inversion() { return m("S", {"1/x", "y", "-(x^2)*p"}); }

// structure read off the table alone
void check_group_axioms(const CayleyTable& t) {
  const int n = static_cast<int>(t.elements.size());
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool id = true;
    for (int b = 0; b < n; ++b) id = id && t.table[a][b] == b && t.table[b][a] == b;
    if (id) e = a;
  }
  REQUIRE(e >= 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) CHECK(t.table[t.table[a][b]][c] == t.table[a][t.table[b][c]]);
  std::map<int, int> multiset;
  bool abelian = true;
  for (int a = 0; a < n; ++a) {
    int k = 1, x = a;
    while (x != e) {
      x = t.table[a][x];
      ++k;
    }
    CHECK(t.orders[static_cast<size_t>(a)] == k);
    CHECK(t.table[a][t.inverses[static_cast<size_t>(a)]] == e);
    ++multiset[k];
    for (int b = 0; b < n; ++b) abelian = abelian && t.table[a][b] == t.table[b][a];
  }
  const auto f = t.fingerprint();
  CHECK(f.order == n);
  CHECK(f.abelian == abelian);
  CHECK(f.order_multiset == multiset);
  CHECK(t.latin_square());
}

}  // namespace

TEST_CASE("element orders") {
  const GroupSamples s(kOde);
  CHECK(element_order(s, s.element(gamma1(), "G1"), 10) == 4);
  CHECK(element_order(s, s.element(legendre(), "G2"), 10) == 2);
  CHECK(element_order(s, s.element(rot3(), "R"), 10) == 3);
  CHECK(element_order(s, s.identity(), 10) == 1);
  CHECK_FALSE(element_order(s, s.element(m("T", {"x + 1", "y", "p"}), "T"), 25).has_value());
}

TEST_CASE("sample equality") {
  const GroupSamples s(kOde);
  const auto a = s.element(gamma1(), "G1");
  const auto sq = s.product(a, a);
  CHECK(s.equal(sq, s.element(m("N", {"-x", "y", "-p"}), "N")));
  CHECK_FALSE(s.equal(sq, s.identity()));
  CHECK(s.is_identity(s.product_values(sq, sq)));
}

TEST_CASE("third-order equation: Z4 x Z2") {
  const auto t = closure_and_table(GroupSamples(kOde), {gamma1(), legendre()}, 64);
  check_group_axioms(t);
  const auto f = t.fingerprint();
  CHECK(f.order == 8);
  CHECK(f.abelian);
  CHECK(f.name() == "Z4xZ2");
  CHECK(f.to_string() == "order 8, abelian, element orders {1:1,2:3,4:4}");
}

TEST_CASE("a non-abelian dihedral closure") {
  const auto t = closure_and_table(GroupSamples(kOde), {rot4(), inversion()}, 64);
  check_group_axioms(t);
  CHECK(t.fingerprint().name() == "D4");
  CHECK_FALSE(t.abelian);
}

TEST_CASE("symmetric group on three letters") {
  const auto t = closure_and_table(GroupSamples(kOde), {rot3(), inversion()}, 64);
  check_group_axioms(t);
  CHECK(t.fingerprint().name() == "S3");
}

TEST_CASE("cyclic and trivial closures") {
  const auto z3 = closure_and_table(GroupSamples(kOde), {rot3()}, 10);
  check_group_axioms(z3);
  CHECK(z3.fingerprint().name() == "Z3");
  const auto triv = closure_and_table(GroupSamples(kOde), {ContactMap::identity(kOde)}, 10);
  CHECK(triv.elements.size() == 1);
  CHECK(triv.fingerprint().name() == "trivial");
}

TEST_CASE("translations have no finite closure") {
  try {
    closure_and_table(GroupSamples(kOde), {m("T", {"x + 1", "y", "p"})}, 20);
    FAIL("expected UnboundedGroup");
  } catch (const UnboundedGroup& e) {
    CHECK(e.orbit_size() > 20);
  }
}

TEST_CASE("unknown fingerprints have no name") {
  Fingerprint f;
  f.order = 12;
  f.abelian = false;
  f.order_multiset = {{1, 1}, {2, 3}, {3, 8}};
  CHECK(f.name().empty());
}

TEST_CASE("latin square detection") {
  CayleyTable t;
  t.table = {{0, 1}, {1, 0}};
  CHECK(t.latin_square());
  t.table = {{0, 1}, {0, 1}};
  CHECK_FALSE(t.latin_square());
}

TEST_CASE("table text lists words and orders") {
  const auto t = closure_and_table(GroupSamples(kOde), {legendre()}, 10);
  const auto text = t.to_text();
  CHECK(text.find("G2") != std::string::npos);
  CHECK(text.find("order 2") != std::string::npos);
}
