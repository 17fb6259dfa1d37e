#include "support/generators.hpp"

#include "stackcalc/reduction.hpp"

namespace stackcalc::testing {

namespace {

const std::vector<std::string> kPool = {"a", "b", "g", "d", "e", "f"};

VarName pool_var(Rng& rng) {
  return VarName{kPool[rng() % kPool.size()], 0};
}

uint32_t pick(Rng& rng, uint32_t bound) {
  return static_cast<uint32_t>(rng() % bound);
}

TermPtr gen_term(Rng& rng, uint32_t budget);

StackPtr gen_stack(Rng& rng, uint32_t budget) {
  if (budget <= 1) {
    switch (pick(rng, 3)) {
      case 0: return nil();
      default: return svar(pool_var(rng));
    }
  }
  switch (pick(rng, 4)) {
    case 0: return nil();
    case 1: return svar(pool_var(rng));
    case 2: return cdr(gen_stack(rng, budget - 1));
    default: {
      uint32_t head_budget = 1 + pick(rng, budget);
      TermPtr h = gen_term(rng, head_budget);
      return push(h, gen_stack(rng, budget > head_budget ? budget - head_budget : 1));
    }
  }
}

TermPtr gen_term(Rng& rng, uint32_t budget) {
  if (budget <= 1) return car(svar(pool_var(rng)));
  switch (pick(rng, 4)) {
    case 0: return car(gen_stack(rng, budget - 1));
    case 1: return abs(pool_var(rng), gen_term(rng, budget - 1));
    default: {
      uint32_t fun_budget = 1 + pick(rng, budget);
      TermPtr f = gen_term(rng, fun_budget);
      return app(f, gen_stack(rng, budget > fun_budget ? budget - fun_budget : 1));
    }
  }
}

}  // namespace

TermPtr random_term(Rng& rng, uint32_t size) { return gen_term(rng, size); }
StackPtr random_stack(Rng& rng, uint32_t size) { return gen_stack(rng, size); }

Expr random_expr(Rng& rng, uint32_t size) {
  if (rng() % 2 == 0) return Expr(gen_term(rng, size));
  return Expr(gen_stack(rng, size));
}

// ---------------------------------------------------------------------------
// normal nil-free terms

namespace {

TermPtr gen_normal(Rng& rng, uint32_t depth, std::vector<VarName>& scope,
                   FreshSession& session);

StackPtr gen_normal_stack(Rng& rng, uint32_t depth,
                          std::vector<VarName>& scope, FreshSession& session) {
  uint32_t len = pick(rng, depth == 0 ? 1 : 3);
  std::vector<TermPtr> terms;
  for (uint32_t i = 0; i < len; ++i) {
    terms.push_back(gen_normal(rng, depth == 0 ? 0 : depth - 1, scope, session));
  }
  StackPtr s = cdrn(svar(scope[pick(rng, scope.size())]), pick(rng, 3));
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) s = push(*it, s);
  return s;
}

TermPtr gen_normal(Rng& rng, uint32_t depth, std::vector<VarName>& scope,
                   FreshSession& session) {
  uint32_t binders = pick(rng, 3);
  size_t mark = scope.size();
  std::vector<VarName> bound;
  for (uint32_t i = 0; i < binders; ++i) {
    VarName v = session.fresh(kPool[pick(rng, kPool.size())]);
    bound.push_back(v);
    scope.push_back(v);
  }
  VarName head = scope[pick(rng, scope.size())];
  uint32_t head_index = pick(rng, 3);
  uint32_t arity = depth == 0 ? 0 : pick(rng, 3);
  TermPtr t = carn(svar(head), head_index);
  for (uint32_t i = 0; i < arity; ++i) {
    t = app(t, gen_normal_stack(rng, depth, scope, session));
  }
  scope.resize(mark);
  return abs_chain(bound, t);
}

// Replace the idx-th subterm (preorder) by a fresh small normal leaf.
TermPtr mutate_term(Rng& rng, const TermPtr& t, uint32_t& counter,
                    uint32_t target, std::vector<VarName>& scope,
                    FreshSession& session);

StackPtr mutate_stack(Rng& rng, const StackPtr& s, uint32_t& counter,
                      uint32_t target, std::vector<VarName>& scope,
                      FreshSession& session) {
  switch (s->kind) {
    case Stack::Kind::Nil:
    case Stack::Kind::Var:
      return s;
    case Stack::Kind::Cdr:
      return cdr(mutate_stack(rng, s->rest, counter, target, scope, session));
    case Stack::Kind::Push:
      return push(mutate_term(rng, s->head, counter, target, scope, session),
                  mutate_stack(rng, s->rest, counter, target, scope, session));
  }
  return s;
}

TermPtr mutate_term(Rng& rng, const TermPtr& t, uint32_t& counter,
                    uint32_t target, std::vector<VarName>& scope,
                    FreshSession& session) {
  if (counter++ == target) {
    return gen_normal(rng, 1, scope, session);
  }
  switch (t->kind) {
    case Term::Kind::Car:
      return car(mutate_stack(rng, t->stack, counter, target, scope, session));
    case Term::Kind::Abs: {
      scope.push_back(t->binder);
      TermPtr body =
          mutate_term(rng, t->body, counter, target, scope, session);
      scope.pop_back();
      return abs(t->binder, body);
    }
    case Term::Kind::App:
      return app(mutate_term(rng, t->body, counter, target, scope, session),
                 mutate_stack(rng, t->stack, counter, target, scope, session));
  }
  return t;
}

uint32_t count_terms(const TermPtr& t);

uint32_t count_terms(const StackPtr& s) {
  switch (s->kind) {
    case Stack::Kind::Nil:
    case Stack::Kind::Var:
      return 0;
    case Stack::Kind::Cdr:
      return count_terms(s->rest);
    case Stack::Kind::Push:
      return count_terms(s->head) + count_terms(s->rest);
  }
  return 0;
}

uint32_t count_terms(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Car:
      return 1 + count_terms(t->stack);
    case Term::Kind::Abs:
      return 1 + count_terms(t->body);
    case Term::Kind::App:
      return 1 + count_terms(t->body) + count_terms(t->stack);
  }
  return 1;
}

bool nil_free(const TermPtr& t);

bool nil_free(const StackPtr& s) {
  switch (s->kind) {
    case Stack::Kind::Nil:
      return false;
    case Stack::Kind::Var:
      return true;
    case Stack::Kind::Cdr:
      return nil_free(s->rest);
    case Stack::Kind::Push:
      return nil_free(s->head) && nil_free(s->rest);
  }
  return false;
}

bool nil_free(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Car:
      return nil_free(t->stack);
    case Term::Kind::Abs:
      return nil_free(t->body);
    case Term::Kind::App:
      return nil_free(t->body) && nil_free(t->stack);
  }
  return false;
}

// Full sigma-eta normalization; the generators produce sigma-normal shapes,
// so this only has to clean up eta redexes.
std::optional<TermPtr> eta_normalize(const TermPtr& t) {
  ReductOutcome r = reduce_normal(Expr(t), RuleSet::sigma_eta(), 5000);
  if (!r.normal()) return std::nullopt;
  return r.expr.term();
}

}  // namespace

TermPtr random_normal_term(Rng& rng, uint32_t max_depth) {
  for (;;) {
    std::vector<VarName> scope = {VarName{"u", 0}, VarName{"z", 0}};
    FreshSession session;
    for (const auto& v : scope) session.reserve(v);
    TermPtr t = gen_normal(rng, max_depth, scope, session);
    auto normal = eta_normalize(t);
    if (normal && nil_free(*normal)) return *normal;
  }
}

std::pair<TermPtr, TermPtr> random_normal_pair(Rng& rng, uint32_t max_depth) {
  for (;;) {
    TermPtr a = random_normal_term(rng, max_depth);
    TermPtr b;
    if (rng() % 2 == 0) {
      b = random_normal_term(rng, max_depth);
    } else {
      std::vector<VarName> scope = {VarName{"u", 0}, VarName{"z", 0}};
      FreshSession session;
      session.reserve_all(a);
      for (const auto& v : scope) session.reserve(v);
      uint32_t total = count_terms(a);
      uint32_t counter = 0;
      TermPtr mutated = mutate_term(rng, a, counter, pick(rng, total), scope,
                                    session);
      auto normal = eta_normalize(mutated);
      if (!normal || !nil_free(*normal)) continue;
      b = *normal;
    }
    if (!alpha_eq(a, b)) return {a, b};
  }
}

// ---------------------------------------------------------------------------
// original head contexts

namespace {

TermPtr gen_original_term(Rng& rng, uint32_t depth, FreshSession& session,
                          std::vector<VarName>& scope);

StackPtr gen_original_stack(Rng& rng, uint32_t depth, FreshSession& session,
                            std::vector<VarName>& scope) {
  switch (pick(rng, 4)) {
    case 0: return nil();
    case 1: return svar(scope[pick(rng, scope.size())]);
    case 2: return cdrn(svar(scope[pick(rng, scope.size())]), 1 + pick(rng, 2));
    default: {
      if (depth == 0) return svar(scope[pick(rng, scope.size())]);
      TermPtr h = gen_original_term(rng, depth - 1, session, scope);
      return push(h, gen_original_stack(rng, depth - 1, session, scope));
    }
  }
}

TermPtr gen_original_term(Rng& rng, uint32_t depth, FreshSession& session,
                          std::vector<VarName>& scope) {
  if (depth == 0 || pick(rng, 3) == 0) {
    return carn(svar(scope[pick(rng, scope.size())]), pick(rng, 3));
  }
  VarName v = session.fresh(kPool[pick(rng, kPool.size())]);
  scope.push_back(v);
  TermPtr fun = gen_original_term(rng, depth - 1, session, scope);
  StackPtr arg = gen_original_stack(rng, depth - 1, session, scope);
  scope.pop_back();
  return abs(v, app(fun, arg));
}

}  // namespace

HeadContext random_original_context(Rng& rng, uint32_t max_layers) {
  FreshSession session;
  std::vector<VarName> scope = {VarName{"q", 0}};
  session.reserve(scope[0]);
  uint32_t layers = pick(rng, max_layers + 1);
  HeadContext ctx;
  for (uint32_t i = 0; i < layers; ++i) {
    VarName v = session.fresh(kPool[pick(rng, kPool.size())]);
    scope.push_back(v);
    ctx.frames.push_back(Frame::bind(v));
    ctx.frames.push_back(
        Frame::apply(gen_original_stack(rng, 2, session, scope)));
  }
  return ctx;
}

std::optional<Expr> random_step(Rng& rng, const Expr& e, const RuleSet& rules) {
  std::vector<Expr> reducts = one_step_redexes(e, rules);
  if (reducts.empty()) return std::nullopt;
  return reducts[pick(rng, static_cast<uint32_t>(reducts.size()))];
}

}  // namespace stackcalc::testing
