#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stackcalc/syntax.hpp"

namespace stackcalc {

// The head of an hnf/onf: car(cdr^index(var)) when proper,
// car(cdr^index(nil)) when improper.
struct Head {
  bool proper = false;
  VarName var{};
  uint32_t index = 0;
};

// Decomposed head normal form bd a_1...a_k. H @ pi_1 @ ... @ pi_m.
// The args are kept in canonical form.
struct HnfView {
  std::vector<VarName> binders;
  Head head;
  std::vector<StackPtr> args;
};

TermPtr recompose(const HnfView& v);

// The unique decomposition of canonical_form(m) when it is in hnf.
std::optional<HnfView> decompose_hnf(const TermPtr& m);

// Renames the view's binders to names[0..k), adjusting the head and the
// argument stacks. Binders are processed innermost-first so duplicate names
// resolve to the innermost occurrence. names must have length >= k and not
// collide with anything free in the view.
HnfView rename_binders(const HnfView& v, const std::vector<VarName>& names,
                       FreshSession& session);

// One head-reduction step: if canonical_form(m) is
// bd a_1...a_k. (bd b. N) @ w @ pi_1 @ ... @ pi_m, contracts the leftmost
// redex, giving bd a_1...a_k. N[w/b] @ pi_1 @ ... @ pi_m.
std::optional<TermPtr> head_step(const TermPtr& m);

// Decomposed outer normal form bd a. H @ (N_1 :: ... :: N_j :: tail), the
// original-calculus analogue. A bare car(pi) term has no binder and no
// stack.
struct OnfTail {
  uint32_t cdr_count = 0;
  bool is_var = false;
  VarName var{};
};

struct OnfView {
  std::optional<VarName> binder;
  Head head;
  std::vector<TermPtr> arg_terms;
  std::optional<OnfTail> tail;
};

TermPtr recompose(const OnfView& v);

std::optional<OnfView> decompose_onf(const TermPtr& m);

// One outer-reduction step (original dialect only): if canonical_form(m) is
// bd a. (bd b. P) @ pi, gives bd a. P[pi/b]. Throws InvalidDialectError when
// m is not original-valid.
std::optional<TermPtr> outer_step(const TermPtr& m);

enum class StrategyStatus { FoundProper, Improper, Diverged };

struct HeadResult {
  StrategyStatus status;
  std::optional<HnfView> view;  // present unless Diverged
  TermPtr term;                 // the reached form (or last term on fuel out)
  uint64_t steps = 0;

  bool proper() const { return status == StrategyStatus::FoundProper; }
};

// Iterated head_step with fuel. Diverged is not evidence of "no hnf";
// callers must treat it as unknown.
HeadResult head_normalize(const TermPtr& m, uint64_t fuel);

struct OuterResult {
  StrategyStatus status;
  std::optional<OnfView> view;
  TermPtr term;
  uint64_t steps = 0;

  bool proper() const { return status == StrategyStatus::FoundProper; }
};

OuterResult outer_normalize(const TermPtr& m, uint64_t fuel);

}  // namespace stackcalc
