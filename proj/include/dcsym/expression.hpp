#pragma once

#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dcsym/rational.hpp"

namespace dcsym {

using Complex = std::complex<double>;

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, size_t offset)
      : InputError(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

/// Raised when an expression cannot be evaluated at a point (division by
/// zero, logarithm of zero, abs of a non-real value, ...).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a denominator falls below the configured singularity threshold.
class SingularError : public EvalError {
 public:
  using EvalError::EvalError;
};

enum class NodeKind { Variable, Number, Parameter, Pi, ImagUnit, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Ln, Abs, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  int index = -1;    // variable slot
  std::string text;  // number literal as written, or parameter name
  Rational value;    // number value, or exponent for Pow
  std::vector<NodePtr> children;
};

struct EvalContext {
  /// Divisions, logarithms and negative powers whose argument magnitude is
  /// at or below this value raise SingularError.
  double singular_threshold = 0.0;
  /// Imaginary part tolerated by abs() before it reports a non-real argument.
  double real_tolerance = 1e-12;
};

/// Arithmetic/transcendental expression over a declared list of variables.
/// Trees are immutable and may share subtrees.
class Expression {
 public:
  Expression() = default;
  Expression(NodePtr root, std::vector<std::string> variables, std::vector<std::string> parameters = {});

  /// Grammar:
  ///   expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
  ///   factor := base ('^' exponent)?
  ///   base := number | name | name '(' expr ')' | '(' expr ')' | '-' base
  ///   exponent := '-'? number | '(' '-'? number ('/' number)? ')'
  static Expression parse(std::string_view text, std::vector<std::string> variables,
                          std::vector<std::string> parameters = {});

  static Expression variable(const std::vector<std::string>& variables, int index);
  static Expression constant(const std::vector<std::string>& variables, const Rational& value);

  const NodePtr& root() const { return root_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  bool valid() const { return root_ != nullptr; }

  std::string to_string() const;

  /// Replaces a declared parameter by an exact rational value.
  Expression bind(const std::string& parameter, const Rational& value) const;
  /// Replaces variable k by replacements[k]; every replacement must share
  /// one variable list, which becomes the variable list of the result.
  Expression substitute(std::span<const Expression> replacements) const;

  bool structurally_equal(const Expression& other) const;
  bool depends_on(int variable_index) const;
  /// Names of parameters that are still unbound in the tree.
  std::vector<std::string> free_parameters() const;

  template <class S>
  S evaluate(std::span<const S> values, const EvalContext& ctx = {}) const;

  Expression operator+(const Expression& o) const;
  Expression operator-(const Expression& o) const;
  Expression operator*(const Expression& o) const;
  Expression operator/(const Expression& o) const;
  Expression operator-() const;

 private:
  NodePtr root_;
  std::vector<std::string> variables_;
  std::vector<std::string> parameters_;
};

bool structurally_equal(const NodePtr& a, const NodePtr& b);
std::string to_string(const NodePtr& node, const std::vector<std::string>& variables);

NodePtr make_node(NodeKind kind, std::vector<NodePtr> children = {});
NodePtr make_number(const Rational& value);

}  // namespace dcsym

#include "dcsym/expression_eval.hpp"
