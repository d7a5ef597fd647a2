#pragma once

// Polynomial expressions in u1, u2 with exact rational literals.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*      division by constants only
//   unary  := '-' unary | power
//   power  := atom ('^' integer)*
//   atom   := literal | 'u1' | 'u2' | '(' expr ')'

#include <stdexcept>
#include <string>
#include <string_view>

#include "engel/polynomial.hpp"

namespace engel {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

RationalPolynomial parse_expression(std::string_view text);

// Canonical printed form; parse_expression(print_expression(p)) == p.
std::string print_expression(const RationalPolynomial& p);

}  // namespace engel
