#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gha/algebra.hpp"

namespace gha {

// Grammar (whitespace insignificant, `*` mandatory between factors):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' integer)?
//   atom    := integer | decimal | 'i' | 'zeta' '(' integer ')' | x | h | y | z | '(' sum ')'
// Division is only by constant subexpressions.

struct SourcePos {
  unsigned line = 1;
  unsigned column = 1;
};

struct Expr {
  enum class Kind { integer, decimal, imaginary_unit, zeta, symbol, add, sub, mul, div, neg, pow };

  Kind kind;
  SourcePos pos;
  std::string text;       // digits of a literal, or the symbol name
  unsigned conductor = 0;  // zeta(N)
  unsigned exponent = 0;   // pow
  std::vector<Expr> args;
};

Expr parse_expr(const std::string& text);

struct ParseOptions {
  Backend backend = Backend::exact;
  /// When set, every cyclotomic literal must lie in Q(zeta_N).
  std::optional<unsigned> conductor;
};

/// True if the text contains a decimal literal, which forces the approximate backend.
bool has_decimal_literal(const std::string& text);

Scalar parse_scalar(const std::string& text, const ParseOptions& opts = {});
/// A polynomial in h.
Poly parse_poly(const std::string& text, const ParseOptions& opts = {});
/// Product of factors taken left to right in the algebra.
Element lower(const Expr& e, const PresentationPtr& p, const ParseOptions& opts = {});
Element parse_element(const std::string& text, const PresentationPtr& p, const ParseOptions& opts = {});

}  // namespace gha
