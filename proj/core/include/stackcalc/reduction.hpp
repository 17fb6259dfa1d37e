#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stackcalc/syntax.hpp"

namespace stackcalc {

// Enabled rewrite rules. sigma() is {bd, car, cdr}; sigma_eta() adds the two
// extensional rules eta0: bd a. M @ a -> M (a not free in M) and
// eta1: car(pi) :: cdr(pi) -> pi.
struct RuleSet {
  bool bd = true;
  bool car = true;
  bool cdr = true;
  bool eta0 = false;
  bool eta1 = false;

  static RuleSet sigma() { return RuleSet{}; }
  static RuleSet sigma_eta() { return RuleSet{true, true, true, true, true}; }
};

// All one-step reducts under the contextual closure of the enabled rules,
// enumerated leftmost-outermost in pre-order.
std::vector<Expr> one_step_redexes(const Expr& e, const RuleSet& rules);

// The leftmost-outermost contraction, if any.
std::optional<Expr> leftmost_step(const Expr& e, const RuleSet& rules);

struct ReductOutcome {
  enum class Status { Normal, FuelExhausted };
  Status status;
  Expr expr;
  uint64_t steps;

  bool normal() const { return status == Status::Normal; }
};

// Repeated leftmost-outermost contraction. Fuel counts single contractions.
ReductOutcome reduce_normal(const Expr& e, const RuleSet& rules, uint64_t fuel);

enum class Tri { Yes, No, Unknown };

// Convertibility check: normalize-and-compare, then a breadth-limited
// common-reduct search. Yes/No answers are sound by Church-Rosser.
Tri convertible(const Expr& a, const Expr& b, const RuleSet& rules,
                uint64_t fuel);

// Yes iff a bounded search finds a common reduct; No when both reduction
// graphs were exhausted without meeting.
Tri joinable(const Expr& a, const Expr& b, const RuleSet& rules, uint64_t fuel);

}  // namespace stackcalc
