#pragma once

#include <string>
#include <string_view>

#include "stackcalc/syntax.hpp"

namespace stackcalc {

struct SyntaxError : Error {
  int line;
  int col;
  std::string expected;

  SyntaxError(int line_, int col_, std::string expected_)
      : Error("syntax error at " + std::to_string(line_) + ":" +
              std::to_string(col_) + ": expected " + expected_),
        line(line_),
        col(col_),
        expected(std::move(expected_)) {}
};

enum class Sort { Term, Stack };

// Grammar:
//   term   := 'bd' IDENT '.' term | app
//   app    := prim ('@' stack)*
//   prim   := 'car' '(' stack ')' | '#' CONST | '(' term ')'
//   stack  := term '::' stack | 'cdr' ['^' NAT] '(' stack ')'
//           | 'nil' | IDENT | '(' stack ')'
// '@' is application, '::' is push (right-assoc), 'cdr^k' abbreviates k
// nested cdr, and an abstraction body extends maximally to the right.
Expr parse(std::string_view text, Sort sort);
TermPtr parse_term(std::string_view text);
StackPtr parse_stack(std::string_view text);

// Parses as a term if possible, otherwise as a stack.
Expr parse_expr(std::string_view text);

std::string print(const Expr& e);
std::string print(const TermPtr& t);
std::string print(const StackPtr& s);

}  // namespace stackcalc
