#include "core/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "core/errors.hpp"

namespace minkflow {

struct Expression::Node {
  enum class Kind { Num, Theta, Add, Sub, Mul, Neg, Cos, Sin, Exp };
  Kind kind;
  double value = 0.0;
  std::unique_ptr<Node> a, b;
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;

std::unique_ptr<Node> make(Kind k, std::unique_ptr<Node> a = nullptr,
                           std::unique_ptr<Node> b = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  std::unique_ptr<Node> run() {
    auto n = expr();
    skip_space();
    if (pos_ != s_.size())
      throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "' at position " +
                       std::to_string(pos_));
    return n;
  }

 private:
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::unique_ptr<Node> expr() {
    auto n = term();
    for (;;) {
      if (eat('+'))
        n = make(Kind::Add, std::move(n), term());
      else if (eat('-'))
        n = make(Kind::Sub, std::move(n), term());
      else
        return n;
    }
  }

  std::unique_ptr<Node> term() {
    auto n = factor();
    while (eat('*')) n = make(Kind::Mul, std::move(n), factor());
    return n;
  }

  std::unique_ptr<Node> factor() {
    skip_space();
    if (pos_ >= s_.size()) throw ParseError("expression ends where a value was expected");
    const char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return make(Kind::Neg, factor());
    }
    if (c == '(') {
      ++pos_;
      auto n = expr();
      if (!eat(')')) throw ParseError("missing ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return word();
    throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                     std::to_string(pos_));
  }

  std::unique_ptr<Node> number() {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(s_.substr(pos_), &used);
    } catch (const std::exception&) {
      throw ParseError("malformed number at position " + std::to_string(pos_));
    }
    // reject exponent-free forms stod would over-eat, e.g. "1e" (stod stops
    // itself); only advance by what it consumed
    pos_ += used;
    auto n = make(Kind::Num);
    n->value = v;
    return n;
  }

  std::unique_ptr<Node> word() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string w = s_.substr(start, pos_ - start);
    if (w == "theta") return make(Kind::Theta);
    if (w == "pi") {
      auto n = make(Kind::Num);
      n->value = std::numbers::pi;
      return n;
    }
    Kind k;
    if (w == "cos")
      k = Kind::Cos;
    else if (w == "sin")
      k = Kind::Sin;
    else if (w == "exp")
      k = Kind::Exp;
    else
      throw ParseError("unknown name '" + w + "'");
    if (!eat('(')) throw ParseError("'" + w + "' needs a parenthesized argument");
    auto arg = expr();
    if (!eat(')')) throw ParseError("missing ')' after '" + w + "' argument");
    return make(k, std::move(arg));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval_node(const Node& n, double theta) {
  switch (n.kind) {
    case Kind::Num:
      return n.value;
    case Kind::Theta:
      return theta;
    case Kind::Add:
      return eval_node(*n.a, theta) + eval_node(*n.b, theta);
    case Kind::Sub:
      return eval_node(*n.a, theta) - eval_node(*n.b, theta);
    case Kind::Mul:
      return eval_node(*n.a, theta) * eval_node(*n.b, theta);
    case Kind::Neg:
      return -eval_node(*n.a, theta);
    case Kind::Cos:
      return std::cos(eval_node(*n.a, theta));
    case Kind::Sin:
      return std::sin(eval_node(*n.a, theta));
    case Kind::Exp:
      return std::exp(eval_node(*n.a, theta));
  }
  throw ParseError("corrupt expression tree");
}

}  // namespace

Expression::Expression() = default;
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;
Expression::~Expression() = default;

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text).run();
  return e;
}

double Expression::eval(double theta) const { return eval_node(*root_, theta); }

GridFunction Expression::sample(std::size_t n) const {
  validate_grid_size(n);
  // probe periodicity before sampling; cos/sin of non-integer frequencies
  // would alias silently otherwise
  const double probes[] = {0.37, 1.91, 4.73};
  for (double t : probes) {
    const double a = eval(t), b = eval(t + 2.0 * std::numbers::pi);
    if (!(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a))))
      throw ParseError("expression is not 2*pi periodic in theta");
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = eval(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
  return GridFunction(std::move(v));
}

}  // namespace minkflow
