#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stackcalc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDialectError : Error {
  using Error::Error;
};

// A stack variable. `index == 0` is the unsuffixed form: ("a", 0) prints as
// "a", ("a", 3) as "a3". The (base, index) pair is totally ordered so that
// freshening is deterministic.
struct VarName {
  std::string base;
  uint32_t index = 0;

  friend auto operator<=>(const VarName&, const VarName&) = default;

  std::string str() const;

  // Splits a surface identifier into base + trailing-digit suffix, so that
  // printing and re-parsing a freshened name is stable ("a3" -> ("a", 3)).
  static VarName from_ident(std::string_view ident);
};

class Term;
class Stack;
using TermPtr = std::shared_ptr<const Term>;
using StackPtr = std::shared_ptr<const Stack>;

// Stacks: nil | variable | cdr(pi) | term :: pi
class Stack {
 public:
  enum class Kind { Nil, Var, Cdr, Push };

  Kind kind;
  VarName var{};   // Var
  TermPtr head{};  // Push
  StackPtr rest{}; // Cdr inner stack / Push tail
};

// Terms of the extended calculus: car(pi) | bd a. M | M @ pi
class Term {
 public:
  enum class Kind { Car, Abs, App };

  Kind kind;
  StackPtr stack{};  // Car argument / App argument
  VarName binder{};  // Abs
  TermPtr body{};    // Abs body / App function
};

StackPtr nil();
StackPtr svar(VarName v);
StackPtr cdr(StackPtr s);
StackPtr push(TermPtr t, StackPtr s);
TermPtr car(StackPtr s);
TermPtr abs(VarName v, TermPtr body);
TermPtr app(TermPtr fun, StackPtr arg);

// cdr^n(s) and car(cdr^n(s))
StackPtr cdrn(StackPtr s, uint32_t n);
TermPtr carn(StackPtr s, uint32_t n);
// M @ pi_1 @ ... @ pi_k
TermPtr app_chain(TermPtr fun, const std::vector<StackPtr>& args);
// bd a_1. ... bd a_k. body
TermPtr abs_chain(const std::vector<VarName>& binders, TermPtr body);

// An expression is either a term or a stack. (Processes of the original
// calculus live inside Term as App.)
struct Expr {
  std::variant<TermPtr, StackPtr> node;

  Expr(TermPtr t) : node(std::move(t)) {}
  Expr(StackPtr s) : node(std::move(s)) {}

  bool is_term() const { return std::holds_alternative<TermPtr>(node); }
  bool is_stack() const { return !is_term(); }
  const TermPtr& term() const { return std::get<TermPtr>(node); }
  const StackPtr& stack() const { return std::get<StackPtr>(node); }
};

// Capture-avoidance bookkeeping. Issues the smallest unused index for a
// base, never colliding with reserved names; deterministic given the same
// reservation history.
class FreshSession {
 public:
  FreshSession() = default;
  explicit FreshSession(const std::set<VarName>& reserved);

  void reserve(const VarName& v);
  void reserve_all(const Expr& e);
  void reserve_all(const TermPtr& t);
  void reserve_all(const StackPtr& s);

  VarName fresh(const std::string& base);

 private:
  std::map<std::string, std::set<uint32_t>> used_;
};

std::set<VarName> free_vars(const Expr& e);
std::set<VarName> free_vars(const TermPtr& t);
std::set<VarName> free_vars(const StackPtr& s);

// Every variable occurring in the expression, bound or free.
std::set<VarName> all_vars(const Expr& e);
std::set<VarName> all_vars(const TermPtr& t);
std::set<VarName> all_vars(const StackPtr& s);

// E[pi/alpha], capture-avoiding; clashing binders are renamed through the
// session. The result is alpha-equivalent no matter the session state.
Expr substitute(const Expr& e, const StackPtr& pi, const VarName& alpha,
                FreshSession& session);
TermPtr substitute(const TermPtr& t, const StackPtr& pi, const VarName& alpha,
                   FreshSession& session);
StackPtr substitute(const StackPtr& s, const StackPtr& pi, const VarName& alpha,
                    FreshSession& session);

bool alpha_eq(const Expr& a, const Expr& b);
bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const StackPtr& a, const StackPtr& b);

// Deterministic alpha-invariant key (binders renumbered in traversal order);
// used for reduct sets and loop detection.
std::string alpha_key(const Expr& e);
std::string alpha_key(const TermPtr& t);
std::string alpha_key(const StackPtr& s);

// The car/cdr-normal form. Stacks in the result have spine
// N_1 :: ... :: N_m :: cdr^k(gamma | nil) and every non-abstraction head is
// car(cdr^n(gamma | nil)). Total, idempotent, unique up to alpha.
Expr canonical_form(const Expr& e);
TermPtr canonical_form(const TermPtr& t);
StackPtr canonical_form(const StackPtr& s);

// View of a canonical stack as terms + cdr^k tail.
struct SpineView {
  std::vector<TermPtr> terms;
  uint32_t cdr_count = 0;
  bool tail_is_var = false;
  VarName tail_var{};
};

// Requires s to be in canonical form.
SpineView spine_of(const StackPtr& s);
StackPtr spine_to_stack(const SpineView& v);

enum class Dialect { Original, Extended };

// Original-calculus validity: terms are car(pi) or bd a. (M @ pi) with all
// embedded terms valid; bare applications only directly under a binder.
bool original_valid(const TermPtr& t);
bool original_valid(const StackPtr& s);
bool original_valid(const Expr& e);

}  // namespace stackcalc
