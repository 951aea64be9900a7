#pragma once

// Generic evaluation of expression trees; included from expression.hpp.

#include <cmath>
#include <numbers>
#include <unordered_map>

#include "dcsym/scalar.hpp"

namespace dcsym {

namespace detail {

[[noreturn]] void throw_eval_error(const Node& node, const std::vector<std::string>& variables, const std::string& what,
                                   bool singular);

template <class S>
S integer_power(S base, long exponent) {
  if (exponent < 0) return S(Complex(1.0)) / integer_power(base, -exponent);
  S result(Complex(1.0));
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

template <class S>
class Evaluator {
 public:
  Evaluator(std::span<const S> values, const EvalContext& ctx, const std::vector<std::string>& variables)
      : values_(values), ctx_(ctx), variables_(variables) {}

  S eval(const Node& node) {
    // Composed maps share subtrees; memoizing keeps evaluation linear in DAG size.
    if (node.children.size() > 0 && memo_.count(&node)) return memo_.at(&node);
    S result = compute(node);
    if (node.children.size() > 0) memo_.emplace(&node, result);
    return result;
  }

 private:
  void guard_denominator(const Node& node, const S& den) {
    const double mag = std::abs(primal(den));
    if (!std::isfinite(mag)) throw_eval_error(node, variables_, "non-finite denominator", false);
    if (mag == 0.0) throw_eval_error(node, variables_, "division by zero", true);
    if (mag <= ctx_.singular_threshold) throw_eval_error(node, variables_, "denominator below singular threshold", true);
  }

  S compute(const Node& node) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    switch (node.kind) {
      case NodeKind::Variable:
        if (node.index < 0 || static_cast<size_t>(node.index) >= values_.size())
          throw_eval_error(node, variables_, "no value for variable", false);
        return values_[static_cast<size_t>(node.index)];
      case NodeKind::Number:
        return S(Complex(node.value.get_d()));
      case NodeKind::Parameter:
        throw_eval_error(node, variables_, "unbound parameter", false);
      case NodeKind::Pi:
        return S(Complex(std::numbers::pi));
      case NodeKind::ImagUnit:
        return S(Complex(0.0, 1.0));
      case NodeKind::Neg:
        return -eval(*node.children[0]);
      case NodeKind::Add:
        return eval(*node.children[0]) + eval(*node.children[1]);
      case NodeKind::Sub:
        return eval(*node.children[0]) - eval(*node.children[1]);
      case NodeKind::Mul:
        return eval(*node.children[0]) * eval(*node.children[1]);
      case NodeKind::Div: {
        S num = eval(*node.children[0]);
        S den = eval(*node.children[1]);
        guard_denominator(node, den);
        return num / den;
      }
      case NodeKind::Pow: {
        S base = eval(*node.children[0]);
        const Rational& e = node.value;
        if (e.get_den() == 1 && e.get_num().fits_slong_p()) {
          const long n = e.get_num().get_si();
          if (n < 0) guard_denominator(node, base);
          return integer_power(base, n);
        }
        guard_denominator(node, base);
        return exp(S(Complex(e.get_d())) * log(base));
      }
      case NodeKind::Sin:
        return sin(eval(*node.children[0]));
      case NodeKind::Cos:
        return cos(eval(*node.children[0]));
      case NodeKind::Exp:
        return exp(eval(*node.children[0]));
      case NodeKind::Ln: {
        S arg = eval(*node.children[0]);
        guard_denominator(node, arg);
        return log(arg);
      }
      case NodeKind::Abs: {
        S arg = eval(*node.children[0]);
        try {
          return real_abs(arg, ctx_.real_tolerance);
        } catch (const std::domain_error&) {
          throw_eval_error(node, variables_, "abs of non-real argument", false);
        }
      }
      case NodeKind::Sqrt:
        return sqrt(eval(*node.children[0]));
    }
    throw_eval_error(node, variables_, "unknown node", false);
  }

  std::span<const S> values_;
  const EvalContext& ctx_;
  const std::vector<std::string>& variables_;
  std::unordered_map<const Node*, S> memo_;
};

}  // namespace detail

template <class S>
S Expression::evaluate(std::span<const S> values, const EvalContext& ctx) const {
  if (!root_) throw EvalError("evaluating an empty expression");
  detail::Evaluator<S> evaluator(values, ctx, variables_);
  return evaluator.eval(*root_);
}

}  // namespace dcsym
