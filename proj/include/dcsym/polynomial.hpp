#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dcsym/rational.hpp"

namespace dcsym {

/// Power product of named variables, sorted by name, exponents > 0.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const std::string& var, int exponent = 1);

  const std::vector<std::pair<std::string, int>>& factors() const { return factors_; }
  int degree() const;
  int exponent_of(const std::string& var) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// Quotient if `other` divides this monomial.
  std::optional<Monomial> divide(const Monomial& other) const;
  Monomial without(const std::string& var) const;
  /// Greatest common divisor of two monomials.
  static Monomial gcd(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& other) const { return factors_ == other.factors_; }
  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, int>> factors_;
  friend struct LexOrder;
};

/// Lexicographic monomial order with variables ordered by name.
struct LexOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, LexOrder>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(implicit)
  Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT(implicit)
  static Polynomial variable(const std::string& name);
  static Polynomial term(const Rational& coeff, const Monomial& mono);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;
  /// Single term c * m.
  bool is_monomial() const { return terms_.size() == 1; }
  std::set<std::string> variables() const;
  bool contains(const std::string& var) const;
  int degree_in(const std::string& var) const;
  int total_degree() const;

  /// Coefficient polynomial of var^power.
  Polynomial coefficient(const std::string& var, int power) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial pow(int exponent) const;
  Polynomial scaled(const Rational& s) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial substitute(const std::string& var, const Polynomial& value) const;
  Polynomial substitute(const std::map<std::string, Polynomial>& values) const;
  Polynomial rename(const std::map<std::string, std::string>& names) const;

  /// Exact division; nullopt when `divisor` does not divide this polynomial.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;
  /// GCD of all term monomials.
  Monomial monomial_content() const;
  /// Divides every term by a monomial that must divide all of them.
  Polynomial divide_monomial(const Monomial& m) const;

  /// Reduces exponents of sign variables (s^2 = 1) modulo two.
  Polynomial reduce_signs(const std::set<std::string>& sign_vars) const;
  /// Scales so that the leading coefficient is one (zero stays zero).
  Polynomial monic() const;
  Rational leading_coefficient() const;

  Rational evaluate(const std::map<std::string, Rational>& point) const;
  double evaluate_double(const std::map<std::string, double>& point) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

}  // namespace dcsym
