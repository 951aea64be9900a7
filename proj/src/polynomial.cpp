#include "dcsym/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dcsym {

Monomial::Monomial(const std::string& var, int exponent) {
  if (exponent > 0) factors_.emplace_back(var, exponent);
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : factors_) d += e;
  return d;
}

int Monomial::exponent_of(const std::string& var) const {
  for (const auto& [v, e] : factors_)
    if (v == var) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::optional<Monomial> Monomial::divide(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  for (const auto& [var, exp] : other.factors_) {
    while (a != factors_.end() && a->first < var) out.factors_.push_back(*a++);
    if (a == factors_.end() || a->first != var || a->second < exp) return std::nullopt;
    if (a->second > exp) out.factors_.emplace_back(var, a->second - exp);
    ++a;
  }
  while (a != factors_.end()) out.factors_.push_back(*a++);
  return out;
}

Monomial Monomial::without(const std::string& var) const {
  Monomial out;
  for (const auto& f : factors_)
    if (f.first != var) out.factors_.push_back(f);
  return out;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (const auto& [var, exp] : a.factors_) {
    const int other = b.exponent_of(var);
    if (other > 0) out.factors_.emplace_back(var, std::min(exp, other));
  }
  return out;
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

bool LexOrder::operator()(const Monomial& a, const Monomial& b) const {
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() && ib != b.factors_.end()) {
    if (ia->first != ib->first) return ia->first > ib->first;  // b has the smaller-named variable
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return ia == a.factors_.end() && ib != b.factors_.end();
}

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial(), constant);
}

Polynomial Polynomial::variable(const std::string& name) { return term(1, Monomial(name)); }

Polynomial Polynomial::term(const Rational& coeff, const Monomial& mono) {
  Polynomial p;
  p.add_term(mono, coeff);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational Polynomial::constant_value() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) vars.insert(v);
  return vars;
}

bool Polynomial::contains(const std::string& var) const { return degree_in(var) > 0; }

int Polynomial::degree_in(const std::string& var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent_of(var));
  return d;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Polynomial Polynomial::coefficient(const std::string& var, int power) const {
  Polynomial out;
  for (const auto& [m, c] : terms_)
    if (m.exponent_of(var) == power) out.add_term(m.without(var), c);
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out(*this);
  out += o;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial out(*this);
  out -= o;
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw InputError("negative polynomial power");
  Polynomial result(1);
  for (int i = 0; i < exponent; ++i) result *= *this;
  return result;
}

Polynomial Polynomial::scaled(const Rational& s) const {
  Polynomial out;
  if (s == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
  return out;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end(); ++a, ++b)
    if (!(a->first == b->first) || a->second != b->second) return false;
  return true;
}

Polynomial Polynomial::substitute(const std::string& var, const Polynomial& value) const {
  return substitute(std::map<std::string, Polynomial>{{var, value}});
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& values) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial piece(c);
    Monomial rest;
    for (const auto& [v, e] : m.factors()) {
      auto it = values.find(v);
      if (it == values.end())
        rest = rest * Monomial(v, e);
      else
        piece *= it->second.pow(e);
    }
    out += piece * term(1, rest);
  }
  return out;
}

Polynomial Polynomial::rename(const std::map<std::string, std::string>& names) const {
  std::map<std::string, Polynomial> values;
  for (const auto& [from, to] : names) values.emplace(from, variable(to));
  return substitute(values);
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  Polynomial remainder(*this);
  Polynomial quotient;
  const auto& [lead_m, lead_c] = *divisor.terms_.rbegin();
  // Bounded: each step strictly lowers the leading monomial of the remainder.
  while (!remainder.is_zero()) {
    const auto& [rm, rc] = *remainder.terms_.rbegin();
    auto q = rm.divide(lead_m);
    if (!q) return std::nullopt;
    Polynomial t = term(rc / lead_c, *q);
    quotient += t;
    remainder -= t * divisor;
  }
  return quotient;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) g = Monomial::gcd(g, m);
  return g;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  Polynomial out;
  for (const auto& [tm, c] : terms_) {
    auto q = tm.divide(m);
    if (!q) throw InputError("monomial does not divide polynomial");
    out.add_term(*q, c);
  }
  return out;
}

Polynomial Polynomial::reduce_signs(const std::set<std::string>& sign_vars) const {
  if (sign_vars.empty()) return *this;
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Monomial reduced;
    for (const auto& [v, e] : m.factors()) {
      const int exp = sign_vars.count(v) ? e % 2 : e;
      if (exp > 0) reduced = reduced * Monomial(v, exp);
    }
    out.add_term(reduced, c);
  }
  return out;
}

Rational Polynomial::leading_coefficient() const { return terms_.empty() ? Rational(0) : terms_.rbegin()->second; }

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(Rational(1) / leading_coefficient());
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw InputError("no value for variable '" + v + "'");
      for (int k = 0; k < e; ++k) t *= it->second;
    }
    total += t;
  }
  return total;
}

double Polynomial::evaluate_double(const std::map<std::string, double>& point) const {
  double total = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw InputError("no value for variable '" + v + "'");
      t *= std::pow(it->second, e);
    }
    total += t;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << m.to_string();
    }
  }
  return os.str();
}

}  // namespace dcsym
