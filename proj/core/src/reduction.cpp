#include "stackcalc/reduction.hpp"

#include <deque>
#include <functional>
#include <unordered_set>

namespace stackcalc {

namespace {

using TermCb = std::function<bool(const TermPtr&)>;
using StackCb = std::function<bool(const StackPtr&)>;

// Pre-order, leftmost-outermost enumeration. The callback returns true to
// stop the walk (used by leftmost_step).
bool red_term(const TermPtr& t, const RuleSet& rules, FreshSession& session,
              const TermCb& cb);

bool red_stack(const StackPtr& s, const RuleSet& rules, FreshSession& session,
               const StackCb& cb) {
  // (cdr) cdr(M :: pi) -> pi
  if (rules.cdr && s->kind == Stack::Kind::Cdr &&
      s->rest->kind == Stack::Kind::Push) {
    if (cb(s->rest->rest)) return true;
  }
  // (eta1) car(pi) :: cdr(pi) -> pi
  if (rules.eta1 && s->kind == Stack::Kind::Push &&
      s->head->kind == Term::Kind::Car && s->rest->kind == Stack::Kind::Cdr &&
      alpha_eq(s->head->stack, s->rest->rest)) {
    if (cb(s->head->stack)) return true;
  }
  switch (s->kind) {
    case Stack::Kind::Nil:
    case Stack::Kind::Var:
      return false;
    case Stack::Kind::Cdr:
      return red_stack(s->rest, rules, session,
                       [&](const StackPtr& r) { return cb(cdr(r)); });
    case Stack::Kind::Push:
      if (red_term(s->head, rules, session, [&](const TermPtr& r) {
            return cb(push(r, s->rest));
          })) {
        return true;
      }
      return red_stack(s->rest, rules, session, [&](const StackPtr& r) {
        return cb(push(s->head, r));
      });
  }
  return false;
}

bool red_term(const TermPtr& t, const RuleSet& rules, FreshSession& session,
              const TermCb& cb) {
  // (bd) (bd a. M) @ pi -> M[pi/a]
  if (rules.bd && t->kind == Term::Kind::App &&
      t->body->kind == Term::Kind::Abs) {
    TermPtr reduct =
        substitute(t->body->body, t->stack, t->body->binder, session);
    if (cb(reduct)) return true;
  }
  // (car) car(M :: pi) -> M
  if (rules.car && t->kind == Term::Kind::Car &&
      t->stack->kind == Stack::Kind::Push) {
    if (cb(t->stack->head)) return true;
  }
  // (eta0) bd a. M @ a -> M, a not free in M
  if (rules.eta0 && t->kind == Term::Kind::Abs &&
      t->body->kind == Term::Kind::App &&
      t->body->stack->kind == Stack::Kind::Var &&
      t->body->stack->var == t->binder &&
      !free_vars(t->body->body).count(t->binder)) {
    if (cb(t->body->body)) return true;
  }
  switch (t->kind) {
    case Term::Kind::Car:
      return red_stack(t->stack, rules, session,
                       [&](const StackPtr& r) { return cb(car(r)); });
    case Term::Kind::Abs:
      return red_term(t->body, rules, session, [&](const TermPtr& r) {
        return cb(abs(t->binder, r));
      });
    case Term::Kind::App:
      if (red_term(t->body, rules, session, [&](const TermPtr& r) {
            return cb(app(r, t->stack));
          })) {
        return true;
      }
      return red_stack(t->stack, rules, session, [&](const StackPtr& r) {
        return cb(app(t->body, r));
      });
  }
  return false;
}

FreshSession session_for(const Expr& e) {
  FreshSession session;
  session.reserve_all(e);
  return session;
}

}  // namespace

std::vector<Expr> one_step_redexes(const Expr& e, const RuleSet& rules) {
  std::vector<Expr> out;
  FreshSession session = session_for(e);
  if (e.is_term()) {
    red_term(e.term(), rules, session, [&](const TermPtr& r) {
      out.emplace_back(r);
      return false;
    });
  } else {
    red_stack(e.stack(), rules, session, [&](const StackPtr& r) {
      out.emplace_back(r);
      return false;
    });
  }
  return out;
}

std::optional<Expr> leftmost_step(const Expr& e, const RuleSet& rules) {
  std::optional<Expr> found;
  FreshSession session = session_for(e);
  if (e.is_term()) {
    red_term(e.term(), rules, session, [&](const TermPtr& r) {
      found.emplace(r);
      return true;
    });
  } else {
    red_stack(e.stack(), rules, session, [&](const StackPtr& r) {
      found.emplace(r);
      return true;
    });
  }
  return found;
}

ReductOutcome reduce_normal(const Expr& e, const RuleSet& rules,
                            uint64_t fuel) {
  Expr cur = e;
  uint64_t steps = 0;
  while (steps < fuel) {
    auto next = leftmost_step(cur, rules);
    if (!next) return ReductOutcome{ReductOutcome::Status::Normal, cur, steps};
    cur = *next;
    ++steps;
  }
  if (!leftmost_step(cur, rules)) {
    return ReductOutcome{ReductOutcome::Status::Normal, cur, steps};
  }
  return ReductOutcome{ReductOutcome::Status::FuelExhausted, cur, steps};
}

namespace {

// Bidirectional breadth search for a common reduct. Returns Yes on a key
// collision, No when both graphs were fully exhausted, Unknown on budget.
// Both sides are seeded with their leftmost chains first: that settles
// normalizing pairs and cyclic terms without exploring the full graph.
Tri common_reduct_search(const Expr& a, const Expr& b, const RuleSet& rules,
                         uint64_t budget) {
  if (alpha_key(a) == alpha_key(b)) return Tri::Yes;
  struct Side {
    std::deque<Expr> frontier;
    std::unordered_set<std::string> seen;
  };
  Side sa, sb;
  sa.frontier.push_back(a);
  sa.seen.insert(alpha_key(a));
  sb.frontier.push_back(b);
  sb.seen.insert(alpha_key(b));

  for (Side* side : {&sa, &sb}) {
    Side& other = (side == &sa) ? sb : sa;
    Expr cur = side->frontier.front();
    for (uint64_t i = 0; i < budget; ++i) {
      auto next = leftmost_step(cur, rules);
      if (!next) break;
      cur = *next;
      std::string key = alpha_key(cur);
      if (other.seen.count(key)) return Tri::Yes;
      if (!side->seen.insert(key).second) break;  // cycle
      side->frontier.push_back(cur);
    }
  }

  uint64_t used = 0;
  while (!sa.frontier.empty() || !sb.frontier.empty()) {
    Side& grow = (!sa.frontier.empty() &&
                  (sb.frontier.empty() || sa.seen.size() <= sb.seen.size()))
                     ? sa
                     : sb;
    Side& other = (&grow == &sa) ? sb : sa;
    Expr cur = grow.frontier.front();
    grow.frontier.pop_front();
    for (const Expr& r : one_step_redexes(cur, rules)) {
      if (++used > budget) return Tri::Unknown;
      std::string key = alpha_key(r);
      if (other.seen.count(key)) return Tri::Yes;
      if (grow.seen.insert(key).second) grow.frontier.push_back(r);
    }
  }
  return Tri::No;
}

}  // namespace

Tri convertible(const Expr& a, const Expr& b, const RuleSet& rules,
                uint64_t fuel) {
  ReductOutcome ra = reduce_normal(a, rules, fuel);
  ReductOutcome rb = reduce_normal(b, rules, fuel);
  if (ra.normal() && rb.normal()) {
    return alpha_eq(ra.expr, rb.expr) ? Tri::Yes : Tri::No;
  }
  // At least one side did not normalize in time; fall back to the bounded
  // search from the partially reduced forms.
  Tri joined = common_reduct_search(ra.expr, rb.expr, rules, fuel);
  return joined == Tri::Yes ? Tri::Yes : Tri::Unknown;
}

Tri joinable(const Expr& a, const Expr& b, const RuleSet& rules,
             uint64_t fuel) {
  return common_reduct_search(a, b, rules, fuel);
}

}  // namespace stackcalc
