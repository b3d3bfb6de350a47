#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vdf/diffpoly.hpp"
#include "vdf/series.hpp"

namespace vdf {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression tree for series and differential polynomials. Literals are
/// nonnegative; subtraction is a sum with a negated child.
struct Expr {
  enum class Kind { literal, symbol, yder, power, product, sum, neg };

  Kind kind;
  Rational value;     // literal
  std::string name;   // symbol
  unsigned order = 0; // yder
  Rational exponent;  // power
  std::vector<ExprPtr> children;
  int line = 0;
  int column = 0;

  static ExprPtr literal(Rational v);
  static ExprPtr symbol(std::string name);
  static ExprPtr yder(unsigned order);
  static ExprPtr power(ExprPtr base, Rational exponent);
  static ExprPtr product(std::vector<ExprPtr> factors);
  static ExprPtr sum(std::vector<ExprPtr> terms);
  static ExprPtr neg(ExprPtr child);
};

/// Structural equality, ignoring source positions.
bool equal(const Expr& a, const Expr& b);

/// Grammar (whitespace-insensitive):
///   expr  := term (('+' | '-') term)*
///   term  := unary ('*' unary)*
///   unary := '-' unary | power
///   power := atom ('^' exp)*
///   exp   := ['-'] number | '(' ['-'] number ')'
///   atom  := number | ident | 'Y' "'"* | 'Y^(' int ')' | '(' expr ')'
/// Numbers are p or p/q; identifiers are [A-Za-z_][A-Za-z0-9_]*.
ExprPtr parse_expr(std::string_view text);
std::string print_expr(const Expr& e);

Series lower_series(const Expr& e, const FieldPtr& field);
DiffPoly lower_poly(const Expr& e, const Derivation& d);

Series parse_series(std::string_view text, const FieldPtr& field);
DiffPoly parse_poly(std::string_view text, const FieldPtr& field);
DiffPoly parse_poly(std::string_view text, const Derivation& d);

}  // namespace vdf
