#pragma once

#include <map>
#include <string>

#include "stackcalc/syntax.hpp"

namespace stackcalc {

// The named term library:
//   I     = bd a. car(a) @ cdr(a)
//   T     = bd a. car(a) @ cdr^2(a)
//   F     = bd a. car(cdr(a)) @ cdr^2(a)
//   omega = bd a. car(a) @ a
//   Omega = bd g. omega @ (omega :: g)            (no hnf)
//   u     = bd x. car(f) @ ((bd b. car(x) @ (car(x) :: b)) :: cdr(x))
//   U     = bd g. u @ (u :: g)
//   Y     = bd f. U @ cdr(f)
//   Tinf  = bd d. Y @ (T :: d)                    (no hnf)
//   wrapU = bd g. car(a) @ a                      (a free)
// u and wrapU are open terms; they are meant to be used under binders that
// capture their free variables.
const std::map<std::string, TermPtr>& constants();

TermPtr constant(const std::string& name);

// The wrapper W[.] = bd a. car(a) @ ((bd b. car(a) @ (wrapU :: [.] :: a)) :: wrapU :: a).
// Plugging is literal: free occurrences of `a` in the argument are captured.
TermPtr wrap(const TermPtr& hole);

}  // namespace stackcalc
