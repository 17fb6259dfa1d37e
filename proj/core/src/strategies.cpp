#include "stackcalc/strategies.hpp"

namespace stackcalc {

namespace {

// Splits a canonical term into binders, application spine and core.
// spine[0] is the innermost (first-applied) stack.
struct Split {
  std::vector<VarName> binders;
  TermPtr core;
  std::vector<StackPtr> spine;
};

Split split_canonical(const TermPtr& canon) {
  Split sp;
  TermPtr cur = canon;
  while (cur->kind == Term::Kind::Abs) {
    sp.binders.push_back(cur->binder);
    cur = cur->body;
  }
  std::vector<StackPtr> rev;
  while (cur->kind == Term::Kind::App) {
    rev.push_back(cur->stack);
    cur = cur->body;
  }
  sp.core = cur;
  sp.spine.assign(rev.rbegin(), rev.rend());
  return sp;
}

// Reads car(cdr^n(base)) off a canonical core.
std::optional<Head> head_of_core(const TermPtr& core) {
  if (core->kind != Term::Kind::Car) return std::nullopt;
  StackPtr s = core->stack;
  uint32_t n = 0;
  while (s->kind == Stack::Kind::Cdr) {
    ++n;
    s = s->rest;
  }
  Head h;
  h.index = n;
  if (s->kind == Stack::Kind::Var) {
    h.proper = true;
    h.var = s->var;
    return h;
  }
  if (s->kind == Stack::Kind::Nil) {
    h.proper = false;
    return h;
  }
  return std::nullopt;  // not canonical
}

TermPtr head_term(const Head& h) {
  StackPtr base = h.proper ? svar(h.var) : nil();
  return carn(base, h.index);
}

}  // namespace

TermPtr recompose(const HnfView& v) {
  TermPtr t = head_term(v.head);
  for (const auto& a : v.args) t = app(t, a);
  return abs_chain(v.binders, t);
}

std::optional<HnfView> decompose_hnf(const TermPtr& m) {
  Split sp = split_canonical(canonical_form(m));
  if (sp.core->kind == Term::Kind::Abs) return std::nullopt;  // head redex
  auto head = head_of_core(sp.core);
  if (!head) return std::nullopt;
  HnfView v;
  v.binders = std::move(sp.binders);
  v.head = *head;
  v.args = std::move(sp.spine);
  return v;
}

HnfView rename_binders(const HnfView& v, const std::vector<VarName>& names,
                       FreshSession& session) {
  HnfView out = v;
  if (out.head.proper) {
    for (size_t i = v.binders.size(); i-- > 0;) {
      if (v.binders[i] == out.head.var) {
        out.head.var = names[i];
        break;
      }
    }
  }
  for (size_t i = v.binders.size(); i-- > 0;) {
    for (auto& arg : out.args) {
      arg = substitute(arg, svar(names[i]), v.binders[i], session);
    }
  }
  out.binders.assign(names.begin(), names.begin() + v.binders.size());
  return out;
}

std::optional<TermPtr> head_step(const TermPtr& m) {
  TermPtr canon = canonical_form(m);
  Split sp = split_canonical(canon);
  if (sp.core->kind != Term::Kind::Abs || sp.spine.empty()) {
    return std::nullopt;
  }
  FreshSession session;
  session.reserve_all(canon);
  TermPtr contracted =
      substitute(sp.core->body, sp.spine[0], sp.core->binder, session);
  std::vector<StackPtr> rest(sp.spine.begin() + 1, sp.spine.end());
  return abs_chain(sp.binders, app_chain(contracted, rest));
}

HeadResult head_normalize(const TermPtr& m, uint64_t fuel) {
  TermPtr cur = m;
  for (uint64_t steps = 0; steps <= fuel; ++steps) {
    auto next = head_step(cur);
    if (!next) {
      auto view = decompose_hnf(cur);
      HeadResult r;
      r.status = view->head.proper ? StrategyStatus::FoundProper
                                   : StrategyStatus::Improper;
      r.view = std::move(view);
      r.term = canonical_form(cur);
      r.steps = steps;
      return r;
    }
    if (steps == fuel) break;
    cur = *next;
  }
  return HeadResult{StrategyStatus::Diverged, std::nullopt, cur, fuel};
}

TermPtr recompose(const OnfView& v) {
  TermPtr t = head_term(v.head);
  if (v.tail) {
    StackPtr s = v.tail->is_var ? svar(v.tail->var) : nil();
    s = cdrn(s, v.tail->cdr_count);
    for (auto it = v.arg_terms.rbegin(); it != v.arg_terms.rend(); ++it) {
      s = push(*it, s);
    }
    t = app(t, s);
  }
  if (v.binder) t = abs(*v.binder, t);
  return t;
}

std::optional<OnfView> decompose_onf(const TermPtr& m) {
  TermPtr canon = canonical_form(m);
  OnfView v;
  TermPtr cur = canon;
  if (cur->kind == Term::Kind::Abs) {
    v.binder = cur->binder;
    cur = cur->body;
  }
  TermPtr core = cur;
  if (cur->kind == Term::Kind::App) {
    core = cur->body;
    if (core->kind == Term::Kind::Abs) return std::nullopt;  // outer redex
    SpineView spine = spine_of(cur->stack);
    v.arg_terms = spine.terms;
    OnfTail tail;
    tail.cdr_count = spine.cdr_count;
    tail.is_var = spine.tail_is_var;
    tail.var = spine.tail_var;
    v.tail = tail;
  } else if (v.binder) {
    return std::nullopt;  // bd a. M with M not a process: not original
  }
  auto head = head_of_core(core);
  if (!head) return std::nullopt;
  v.head = *head;
  return v;
}

std::optional<TermPtr> outer_step(const TermPtr& m) {
  if (!original_valid(m)) {
    throw InvalidDialectError("outer reduction requires an original-dialect term");
  }
  TermPtr canon = canonical_form(m);
  if (canon->kind != Term::Kind::Abs) return std::nullopt;
  TermPtr body = canon->body;
  if (body->kind != Term::Kind::App || body->body->kind != Term::Kind::Abs) {
    return std::nullopt;
  }
  FreshSession session;
  session.reserve_all(canon);
  TermPtr contracted =
      substitute(body->body->body, body->stack, body->body->binder, session);
  return abs(canon->binder, contracted);
}

OuterResult outer_normalize(const TermPtr& m, uint64_t fuel) {
  TermPtr cur = m;
  for (uint64_t steps = 0; steps <= fuel; ++steps) {
    auto next = outer_step(cur);
    if (!next) {
      auto view = decompose_onf(cur);
      if (!view) {
        throw InvalidDialectError("term has no outer normal form shape");
      }
      OuterResult r;
      r.status = view->head.proper ? StrategyStatus::FoundProper
                                   : StrategyStatus::Improper;
      r.view = std::move(view);
      r.term = canonical_form(cur);
      r.steps = steps;
      return r;
    }
    if (steps == fuel) break;
    cur = *next;
  }
  return OuterResult{StrategyStatus::Diverged, std::nullopt, cur, fuel};
}

}  // namespace stackcalc
