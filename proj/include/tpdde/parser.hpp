#ifndef TPDDE_PARSER_HPP
#define TPDDE_PARSER_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tpdde/cx.hpp"
#include "tpdde/exppoly.hpp"
#include "tpdde/poly.hpp"

namespace tpdde {

/// Syntax tree of an expression. Parentheses leave no node behind.
struct ExprNode {
  enum class Kind { Number, ImagUnit, Pi, Var, Add, Sub, Mul, Div, Pow, Exp, Sqrt, Ln, Neg };

  Kind kind = Kind::Number;
  double number = 0.0;
  /// Var: 0-based variable index.
  std::size_t var = 0;
  /// Pow: the literal exponent.
  unsigned power = 0;
  /// Offset of the node's first character in the source text.
  std::size_t pos = 0;
  std::vector<std::unique_ptr<ExprNode>> kids;
};

/// Grammar (whitespace is ignored):
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := '-' factor | atom ('^' uint)?
///   atom   := number | 'i' | 'pi' | 'z' digits | '(' expr ')'
///           | 'exp(' expr ')' | 'sqrt(' expr ')' | 'ln(' expr ')'
///
/// Variables are z1..z<arity>. When `alias` is non-empty it is accepted as
/// another spelling of z1 (e.g. "s" or "w" for univariate inputs).
std::unique_ptr<ExprNode> parse_ast(std::string_view text, std::size_t arity,
                                    std::string_view alias = {});

/// Evaluates a tree, folding constants. Division needs a nonzero constant
/// divisor; exp needs a polynomial argument; sqrt and ln need constants.
ExpPoly eval_ast(const ExprNode& node, std::size_t arity);

/// parse_ast + eval_ast. Errors are ParseError with the offending position.
ExpPoly parse_expression(std::string_view text, std::size_t arity, std::string_view alias = {});

/// An expression that must reduce to a polynomial.
Poly parse_polynomial(std::string_view text, std::size_t arity, std::string_view alias = {});

/// An expression without variables.
Cx parse_constant(std::string_view text);

/// Canonical spelling accepted by parse_expression: "0", or terms joined
/// by " + ", each "(coeff)" or "(coeff)*exp(exponent)".
std::string format_expression(const ExpPoly& f);

}  // namespace tpdde

#endif  // TPDDE_PARSER_HPP
