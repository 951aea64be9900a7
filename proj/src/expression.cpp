#include "dcsym/expression.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace dcsym {

namespace {

const std::map<std::string, NodeKind>& function_table() {
  static const std::map<std::string, NodeKind> table = {
      {"sin", NodeKind::Sin}, {"cos", NodeKind::Cos}, {"exp", NodeKind::Exp},
      {"ln", NodeKind::Ln},   {"abs", NodeKind::Abs}, {"sqrt", NodeKind::Sqrt},
  };
  return table;
}

bool is_reserved(const std::string& name) { return name == "pi" || name == "i" || function_table().count(name) > 0; }

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables, const std::vector<std::string>& parameters)
      : text_(text), variables_(variables), parameters_(parameters) {}

  NodePtr parse() {
    skip_space();
    NodePtr node = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError("syntax error: " + message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make_node(NodeKind::Add, {lhs, term()});
      else if (accept('-'))
        lhs = make_node(NodeKind::Sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = make_node(NodeKind::Mul, {lhs, factor()});
      else if (accept('/'))
        lhs = make_node(NodeKind::Div, {lhs, factor()});
      else
        return lhs;
    }
  }

  NodePtr factor() {
    NodePtr b = base();
    if (!accept('^')) return b;
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Pow;
    node->value = exponent();
    node->children = {b};
    return node;
  }

  Rational exponent() {
    skip_space();
    if (accept('(')) {
      const bool negative = accept('-');
      Rational value = number_value();
      if (accept('/')) {
        Rational den = number_value();
        if (den == 0) fail("zero denominator in exponent");
        value /= den;
      }
      expect(')');
      return negative ? Rational(-value) : value;
    }
    const bool negative = accept('-');
    Rational value = number_value();
    return negative ? Rational(-value) : value;
  }

  Rational number_value() {
    skip_space();
    if (pos_ >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      fail("expected number");
    return parse_rational(number_text());
  }

  std::string number_text() {
    const size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  NodePtr base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return make_node(NodeKind::Neg, {base()});
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const size_t start = pos_;
      auto node = std::make_shared<Node>();
      node->kind = NodeKind::Number;
      node->text = number_text();
      try {
        node->value = parse_rational(node->text);
      } catch (const InputError&) {
        pos_ = start;
        fail("malformed number");
      }
      return node;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      return named(name, start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr named(const std::string& name, size_t start) {
    auto fn = function_table().find(name);
    if (fn != function_table().end()) {
      if (!accept('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      expect(')');
      return make_node(fn->second, {arg});
    }
    auto var = std::find(variables_.begin(), variables_.end(), name);
    if (var != variables_.end()) {
      auto node = std::make_shared<Node>();
      node->kind = NodeKind::Variable;
      node->index = static_cast<int>(var - variables_.begin());
      return node;
    }
    if (std::find(parameters_.begin(), parameters_.end(), name) != parameters_.end()) {
      auto node = std::make_shared<Node>();
      node->kind = NodeKind::Parameter;
      node->text = name;
      return node;
    }
    if (name == "pi") return make_node(NodeKind::Pi);
    if (name == "i") return make_node(NodeKind::ImagUnit);
    throw ParseError("undeclared variable '" + name + "'", start);
  }

  std::string_view text_;
  const std::vector<std::string>& variables_;
  const std::vector<std::string>& parameters_;
  size_t pos_ = 0;
};

// Printing precedence: 1 sum, 2 product, 3 power, 4 prefix/atom.
int precedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Pow:
      return 3;
    default:
      return 4;
  }
}

const char* function_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Sin:
      return "sin";
    case NodeKind::Cos:
      return "cos";
    case NodeKind::Exp:
      return "exp";
    case NodeKind::Ln:
      return "ln";
    case NodeKind::Abs:
      return "abs";
    case NodeKind::Sqrt:
      return "sqrt";
    default:
      return nullptr;
  }
}

void print(const Node& n, const std::vector<std::string>& vars, std::string& out);

void print_at(const Node& n, int min_prec, const std::vector<std::string>& vars, std::string& out) {
  const bool paren = precedence(n) < min_prec;
  if (paren) out += "(";
  print(n, vars, out);
  if (paren) out += ")";
}

void print(const Node& n, const std::vector<std::string>& vars, std::string& out) {
  switch (n.kind) {
    case NodeKind::Variable:
      out += n.index >= 0 && static_cast<size_t>(n.index) < vars.size() ? vars[static_cast<size_t>(n.index)]
                                                                       : "$" + std::to_string(n.index);
      return;
    case NodeKind::Number:
      out += n.text.empty() ? n.value.get_str() : n.text;
      return;
    case NodeKind::Parameter:
      out += n.text;
      return;
    case NodeKind::Pi:
      out += "pi";
      return;
    case NodeKind::ImagUnit:
      out += "i";
      return;
    case NodeKind::Neg:
      out += "-";
      // '-' base: a power operand must be parenthesized, since -x^2 reads as (-x)^2.
      print_at(*n.children[0], 4, vars, out);
      return;
    case NodeKind::Add:
    case NodeKind::Sub:
      print_at(*n.children[0], 1, vars, out);
      out += n.kind == NodeKind::Add ? " + " : " - ";
      print_at(*n.children[1], 2, vars, out);
      return;
    case NodeKind::Mul:
    case NodeKind::Div:
      print_at(*n.children[0], 2, vars, out);
      out += n.kind == NodeKind::Mul ? "*" : "/";
      print_at(*n.children[1], 3, vars, out);
      return;
    case NodeKind::Pow: {
      print_at(*n.children[0], 4, vars, out);
      out += "^";
      const Rational& e = n.value;
      if (e >= 0 && e.get_den() == 1)
        out += e.get_str();
      else
        out += "(" + e.get_str() + ")";
      return;
    }
    default:
      out += function_name(n.kind);
      out += "(";
      print(*n.children[0], vars, out);
      out += ")";
      return;
  }
}

NodePtr rebuild(const NodePtr& node, const std::function<NodePtr(const NodePtr&)>& leaf,
                std::unordered_map<const Node*, NodePtr>& memo) {
  if (auto it = memo.find(node.get()); it != memo.end()) return it->second;
  NodePtr result;
  if (node->children.empty()) {
    result = leaf(node);
  } else {
    auto copy = std::make_shared<Node>(*node);
    bool changed = false;
    for (auto& child : copy->children) {
      NodePtr next = rebuild(child, leaf, memo);
      changed = changed || next != child;
      child = next;
    }
    result = changed ? NodePtr(copy) : node;
  }
  memo.emplace(node.get(), result);
  return result;
}

void collect_parameters(const NodePtr& node, std::set<std::string>& out, std::set<const Node*>& seen) {
  if (!seen.insert(node.get()).second) return;
  if (node->kind == NodeKind::Parameter) out.insert(node->text);
  for (const auto& child : node->children) collect_parameters(child, out, seen);
}

bool depends(const NodePtr& node, int index, std::unordered_map<const Node*, bool>& memo) {
  if (auto it = memo.find(node.get()); it != memo.end()) return it->second;
  bool result = node->kind == NodeKind::Variable && node->index == index;
  for (const auto& child : node->children) result = result || depends(child, index, memo);
  memo.emplace(node.get(), result);
  return result;
}

}  // namespace

namespace detail {

void throw_eval_error(const Node& node, const std::vector<std::string>& variables, const std::string& what,
                      bool singular) {
  std::string text;
  print(node, variables, text);
  const std::string message = what + " in '" + text + "'";
  if (singular) throw SingularError(message);
  throw EvalError(message);
}

}  // namespace detail

NodePtr make_node(NodeKind kind, std::vector<NodePtr> children) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->children = std::move(children);
  return node;
}

NodePtr make_number(const Rational& value) {
  // Negative or fractional values become -(p/q) trees that print and reparse identically.
  Rational mag = abs(value);
  auto num = std::make_shared<Node>();
  num->kind = NodeKind::Number;
  num->value = Rational(mag.get_num());
  num->text = num->value.get_str();
  NodePtr out = num;
  if (mag.get_den() != 1) {
    auto den = std::make_shared<Node>();
    den->kind = NodeKind::Number;
    den->value = Rational(mag.get_den());
    den->text = den->value.get_str();
    out = make_node(NodeKind::Div, {out, den});
  }
  if (value < 0) out = make_node(NodeKind::Neg, {out});
  return out;
}

Expression::Expression(NodePtr root, std::vector<std::string> variables, std::vector<std::string> parameters)
    : root_(std::move(root)), variables_(std::move(variables)), parameters_(std::move(parameters)) {}

Expression Expression::parse(std::string_view text, std::vector<std::string> variables,
                             std::vector<std::string> parameters) {
  for (const auto& name : variables)
    if (is_reserved(name)) throw InputError("variable name '" + name + "' is reserved");
  for (const auto& name : parameters)
    if (is_reserved(name)) throw InputError("parameter name '" + name + "' is reserved");
  Parser parser(text, variables, parameters);
  NodePtr root = parser.parse();
  return Expression(std::move(root), std::move(variables), std::move(parameters));
}

Expression Expression::variable(const std::vector<std::string>& variables, int index) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Variable;
  node->index = index;
  return Expression(node, variables);
}

Expression Expression::constant(const std::vector<std::string>& variables, const Rational& value) {
  return Expression(make_number(value), variables);
}

std::string Expression::to_string() const {
  if (!root_) return "";
  return dcsym::to_string(root_, variables_);
}

std::string to_string(const NodePtr& node, const std::vector<std::string>& variables) {
  std::string out;
  print(*node, variables, out);
  return out;
}

Expression Expression::bind(const std::string& parameter, const Rational& value) const {
  std::unordered_map<const Node*, NodePtr> memo;
  NodePtr replacement = make_number(value);
  NodePtr root = rebuild(
      root_,
      [&](const NodePtr& leaf) {
        return leaf->kind == NodeKind::Parameter && leaf->text == parameter ? replacement : leaf;
      },
      memo);
  std::vector<std::string> params;
  for (const auto& p : parameters_)
    if (p != parameter) params.push_back(p);
  return Expression(root, variables_, params);
}

Expression Expression::substitute(std::span<const Expression> replacements) const {
  if (replacements.size() != variables_.size())
    throw InputError("substitution needs one replacement per variable (" + std::to_string(variables_.size()) + ")");
  if (replacements.empty()) return *this;
  const auto& target_vars = replacements[0].variables();
  std::set<std::string> params(parameters_.begin(), parameters_.end());
  for (const auto& r : replacements) {
    if (r.variables() != target_vars) throw InputError("substitution replacements use different variable lists");
    params.insert(r.parameters().begin(), r.parameters().end());
  }
  std::unordered_map<const Node*, NodePtr> memo;
  NodePtr root = rebuild(
      root_,
      [&](const NodePtr& leaf) {
        return leaf->kind == NodeKind::Variable ? replacements[static_cast<size_t>(leaf->index)].root() : leaf;
      },
      memo);
  return Expression(root, target_vars, std::vector<std::string>(params.begin(), params.end()));
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->children.size() != b->children.size()) return false;
  switch (a->kind) {
    case NodeKind::Variable:
      if (a->index != b->index) return false;
      break;
    case NodeKind::Number:
    case NodeKind::Pow:
      if (a->value != b->value) return false;
      break;
    case NodeKind::Parameter:
      if (a->text != b->text) return false;
      break;
    default:
      break;
  }
  for (size_t k = 0; k < a->children.size(); ++k)
    if (!structurally_equal(a->children[k], b->children[k])) return false;
  return true;
}

bool Expression::structurally_equal(const Expression& other) const {
  return variables_ == other.variables_ && dcsym::structurally_equal(root_, other.root_);
}

bool Expression::depends_on(int variable_index) const {
  std::unordered_map<const Node*, bool> memo;
  return depends(root_, variable_index, memo);
}

std::vector<std::string> Expression::free_parameters() const {
  std::set<std::string> out;
  std::set<const Node*> seen;
  collect_parameters(root_, out, seen);
  return {out.begin(), out.end()};
}

namespace {
Expression combine(NodeKind kind, const Expression& a, const Expression& b) {
  if (a.variables() != b.variables()) throw InputError("combining expressions over different variables");
  std::set<std::string> params(a.parameters().begin(), a.parameters().end());
  params.insert(b.parameters().begin(), b.parameters().end());
  return Expression(make_node(kind, {a.root(), b.root()}), a.variables(), {params.begin(), params.end()});
}
}  // namespace

Expression Expression::operator+(const Expression& o) const { return combine(NodeKind::Add, *this, o); }
Expression Expression::operator-(const Expression& o) const { return combine(NodeKind::Sub, *this, o); }
Expression Expression::operator*(const Expression& o) const { return combine(NodeKind::Mul, *this, o); }
Expression Expression::operator/(const Expression& o) const { return combine(NodeKind::Div, *this, o); }
Expression Expression::operator-() const { return Expression(make_node(NodeKind::Neg, {root_}), variables_, parameters_); }

}  // namespace dcsym
