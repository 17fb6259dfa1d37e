#include <doctest.h>

#include "stackcalc/constants.hpp"
#include "stackcalc/separator.hpp"
#include "stackcalc/surface.hpp"
#include "support/generators.hpp"

using namespace stackcalc;
using stackcalc::testing::Rng;

TEST_CASE("parse basics") {
  CHECK(alpha_eq(parse_term("bd a. car(a) @ cdr^2(a)"), constant("T")));
  CHECK(alpha_eq(parse_term("car(#T :: nil)"),
                 car(push(constant("T"), nil()))));
  CHECK_THROWS_AS(parse_term("car(T :: nil)"), SyntaxError);
  CHECK_THROWS_AS(parse_term("bd a. car(a"), SyntaxError);
  CHECK_THROWS_AS(parse_term(""), SyntaxError);
}

TEST_CASE("parse error carries a position") {
  try {
    parse_term("bd a. car(a");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK(e.col >= 11);
  }
}

TEST_CASE("cdr sugar") {
  CHECK(alpha_eq(parse_stack("cdr^3(a)"), cdrn(svar(VarName{"a", 0}), 3)));
  CHECK(alpha_eq(parse_stack("cdr^0(a)"), svar(VarName{"a", 0})));
  CHECK(print(cdrn(svar(VarName{"a", 0}), 3)) == "cdr^3(a)");
  CHECK(print(cdrn(svar(VarName{"a", 0}), 1)) == "cdr(a)");
}

TEST_CASE("permutator constants") {
  CHECK(alpha_eq(parse_term("#P0"), parse_term("bd d. car(d)")));
  CHECK(alpha_eq(parse_term("#P2"),
                 parse_term("bd e1. bd e2. bd d. car(d) @ e1 @ e2")));
  CHECK(alpha_eq(parse_term("#P2"), permutator(2)));
}

TEST_CASE("printing examples") {
  CHECK(print(constant("T")) == "bd a. car(a) @ cdr^2(a)");
  CHECK(print(push(car(svar(VarName{"a", 0})), cdr(svar(VarName{"a", 0})))) ==
        "car(a) :: cdr(a)");
}

TEST_CASE("stack position disambiguation") {
  // A term in push position needs parentheses when it would swallow '::'.
  TermPtr t = parse_term("car((bd a. car(a) @ a) :: g)");
  CHECK(t->kind == Term::Kind::Car);
  CHECK(t->stack->kind == Stack::Kind::Push);
  // Greedy stacks after '@' stop at the next '@'.
  TermPtr u = parse_term("car(b) @ #T :: g @ d");
  CHECK(u->kind == Term::Kind::App);
  CHECK(u->body->kind == Term::Kind::App);
}

TEST_CASE("round trips on random terms") {
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    Expr e = stackcalc::testing::random_expr(rng, 40);
    std::string text = print(e);
    Expr back = e.is_term() ? Expr(parse_term(text)) : Expr(parse_stack(text));
    REQUIRE(alpha_eq(back, e));
    // print . parse is the identity on printed output
    CHECK(print(back) == text);
  }
}
