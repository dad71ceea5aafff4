#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "core/grid_function.hpp"

namespace minkflow {

// Small closed grammar for target densities over the angle:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := number | 'theta' | 'cos' '(' expr ')' | 'sin' '(' expr ')'
//           | 'exp' '(' expr ')' | '(' expr ')' | '-' factor
// Sampling rejects expressions that are not 2*pi periodic.
class Expression {
 public:
  static Expression parse(const std::string& text);  // ParseError on bad input
  double eval(double theta) const;
  GridFunction sample(std::size_t n) const;
  const std::string& text() const { return text_; }

  struct Node;
  Expression(Expression&&) noexcept;
  Expression& operator=(Expression&&) noexcept;
  ~Expression();

 private:
  Expression();
  std::unique_ptr<Node> root_;
  std::string text_;
};

}  // namespace minkflow
