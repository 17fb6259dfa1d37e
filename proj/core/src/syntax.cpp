#include "stackcalc/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace stackcalc {

std::string VarName::str() const {
  if (index == 0) return base;
  return base + std::to_string(index);
}

VarName VarName::from_ident(std::string_view ident) {
  size_t cut = ident.size();
  while (cut > 1 && std::isdigit(static_cast<unsigned char>(ident[cut - 1]))) {
    --cut;
  }
  VarName v;
  v.base = std::string(ident.substr(0, cut));
  if (cut < ident.size()) {
    v.index = static_cast<uint32_t>(std::stoul(std::string(ident.substr(cut))));
  }
  return v;
}

StackPtr nil() {
  static const StackPtr n = std::make_shared<const Stack>(Stack{Stack::Kind::Nil});
  return n;
}

StackPtr svar(VarName v) {
  auto s = std::make_shared<Stack>();
  s->kind = Stack::Kind::Var;
  s->var = std::move(v);
  return s;
}

StackPtr cdr(StackPtr inner) {
  auto s = std::make_shared<Stack>();
  s->kind = Stack::Kind::Cdr;
  s->rest = std::move(inner);
  return s;
}

StackPtr push(TermPtr t, StackPtr tail) {
  auto s = std::make_shared<Stack>();
  s->kind = Stack::Kind::Push;
  s->head = std::move(t);
  s->rest = std::move(tail);
  return s;
}

TermPtr car(StackPtr s) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Car;
  t->stack = std::move(s);
  return t;
}

TermPtr abs(VarName v, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Abs;
  t->binder = std::move(v);
  t->body = std::move(body);
  return t;
}

TermPtr app(TermPtr fun, StackPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::App;
  t->body = std::move(fun);
  t->stack = std::move(arg);
  return t;
}

StackPtr cdrn(StackPtr s, uint32_t n) {
  for (uint32_t i = 0; i < n; ++i) s = cdr(std::move(s));
  return s;
}

TermPtr carn(StackPtr s, uint32_t n) { return car(cdrn(std::move(s), n)); }

TermPtr app_chain(TermPtr fun, const std::vector<StackPtr>& args) {
  for (const auto& a : args) fun = app(std::move(fun), a);
  return fun;
}

TermPtr abs_chain(const std::vector<VarName>& binders, TermPtr body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
    body = abs(*it, std::move(body));
  }
  return body;
}

// ---------------------------------------------------------------------------
// variable sets

namespace {

void collect_free(const TermPtr& t, std::set<VarName>& bound,
                  std::set<VarName>& out);

void collect_free(const StackPtr& s, std::set<VarName>& bound,
                  std::set<VarName>& out) {
  switch (s->kind) {
    case Stack::Kind::Nil:
      return;
    case Stack::Kind::Var:
      if (!bound.count(s->var)) out.insert(s->var);
      return;
    case Stack::Kind::Cdr:
      collect_free(s->rest, bound, out);
      return;
    case Stack::Kind::Push:
      collect_free(s->head, bound, out);
      collect_free(s->rest, bound, out);
      return;
  }
}

void collect_free(const TermPtr& t, std::set<VarName>& bound,
                  std::set<VarName>& out) {
  switch (t->kind) {
    case Term::Kind::Car:
      collect_free(t->stack, bound, out);
      return;
    case Term::Kind::Abs: {
      bool inserted = bound.insert(t->binder).second;
      collect_free(t->body, bound, out);
      if (inserted) bound.erase(t->binder);
      return;
    }
    case Term::Kind::App:
      collect_free(t->body, bound, out);
      collect_free(t->stack, bound, out);
      return;
  }
}

void collect_all(const TermPtr& t, std::set<VarName>& out);

void collect_all(const StackPtr& s, std::set<VarName>& out) {
  switch (s->kind) {
    case Stack::Kind::Nil:
      return;
    case Stack::Kind::Var:
      out.insert(s->var);
      return;
    case Stack::Kind::Cdr:
      collect_all(s->rest, out);
      return;
    case Stack::Kind::Push:
      collect_all(s->head, out);
      collect_all(s->rest, out);
      return;
  }
}

void collect_all(const TermPtr& t, std::set<VarName>& out) {
  switch (t->kind) {
    case Term::Kind::Car:
      collect_all(t->stack, out);
      return;
    case Term::Kind::Abs:
      out.insert(t->binder);
      collect_all(t->body, out);
      return;
    case Term::Kind::App:
      collect_all(t->body, out);
      collect_all(t->stack, out);
      return;
  }
}

}  // namespace

std::set<VarName> free_vars(const TermPtr& t) {
  std::set<VarName> bound, out;
  collect_free(t, bound, out);
  return out;
}

std::set<VarName> free_vars(const StackPtr& s) {
  std::set<VarName> bound, out;
  collect_free(s, bound, out);
  return out;
}

std::set<VarName> free_vars(const Expr& e) {
  return e.is_term() ? free_vars(e.term()) : free_vars(e.stack());
}

std::set<VarName> all_vars(const TermPtr& t) {
  std::set<VarName> out;
  collect_all(t, out);
  return out;
}

std::set<VarName> all_vars(const StackPtr& s) {
  std::set<VarName> out;
  collect_all(s, out);
  return out;
}

std::set<VarName> all_vars(const Expr& e) {
  return e.is_term() ? all_vars(e.term()) : all_vars(e.stack());
}

// ---------------------------------------------------------------------------
// fresh names

FreshSession::FreshSession(const std::set<VarName>& reserved) {
  for (const auto& v : reserved) reserve(v);
}

void FreshSession::reserve(const VarName& v) { used_[v.base].insert(v.index); }

void FreshSession::reserve_all(const TermPtr& t) {
  for (const auto& v : all_vars(t)) reserve(v);
}

void FreshSession::reserve_all(const StackPtr& s) {
  for (const auto& v : all_vars(s)) reserve(v);
}

void FreshSession::reserve_all(const Expr& e) {
  if (e.is_term()) {
    reserve_all(e.term());
  } else {
    reserve_all(e.stack());
  }
}

VarName FreshSession::fresh(const std::string& base) {
  auto& used = used_[base];
  uint32_t idx = 0;
  while (used.count(idx)) ++idx;
  used.insert(idx);
  return VarName{base, idx};
}

// ---------------------------------------------------------------------------
// substitution

namespace {

bool occurs_free(const TermPtr& t, const VarName& v) {
  return free_vars(t).count(v) > 0;
}

TermPtr subst_term(const TermPtr& t, const StackPtr& pi, const VarName& alpha,
                   const std::set<VarName>& pi_free, FreshSession& session);

StackPtr subst_stack(const StackPtr& s, const StackPtr& pi, const VarName& alpha,
                     const std::set<VarName>& pi_free, FreshSession& session) {
  switch (s->kind) {
    case Stack::Kind::Nil:
      return s;
    case Stack::Kind::Var:
      return s->var == alpha ? pi : s;
    case Stack::Kind::Cdr:
      return cdr(subst_stack(s->rest, pi, alpha, pi_free, session));
    case Stack::Kind::Push:
      return push(subst_term(s->head, pi, alpha, pi_free, session),
                  subst_stack(s->rest, pi, alpha, pi_free, session));
  }
  return s;
}

TermPtr subst_term(const TermPtr& t, const StackPtr& pi, const VarName& alpha,
                   const std::set<VarName>& pi_free, FreshSession& session) {
  switch (t->kind) {
    case Term::Kind::Car:
      return car(subst_stack(t->stack, pi, alpha, pi_free, session));
    case Term::Kind::App:
      return app(subst_term(t->body, pi, alpha, pi_free, session),
                 subst_stack(t->stack, pi, alpha, pi_free, session));
    case Term::Kind::Abs: {
      if (t->binder == alpha) return t;  // alpha is shadowed
      if (!occurs_free(t->body, alpha)) return t;
      if (pi_free.count(t->binder)) {
        // Binder would capture a free variable of pi: rename it first.
        VarName renamed = session.fresh(t->binder.base);
        auto body_vars = all_vars(t->body);
        while (pi_free.count(renamed) || body_vars.count(renamed) ||
               renamed == alpha) {
          renamed = session.fresh(t->binder.base);
        }
        TermPtr body = subst_term(t->body, svar(renamed), t->binder,
                                  {renamed}, session);
        return abs(renamed, subst_term(body, pi, alpha, pi_free, session));
      }
      return abs(t->binder, subst_term(t->body, pi, alpha, pi_free, session));
    }
  }
  return t;
}

}  // namespace

TermPtr substitute(const TermPtr& t, const StackPtr& pi, const VarName& alpha,
                   FreshSession& session) {
  return subst_term(t, pi, alpha, free_vars(pi), session);
}

StackPtr substitute(const StackPtr& s, const StackPtr& pi, const VarName& alpha,
                    FreshSession& session) {
  return subst_stack(s, pi, alpha, free_vars(pi), session);
}

Expr substitute(const Expr& e, const StackPtr& pi, const VarName& alpha,
                FreshSession& session) {
  if (e.is_term()) return Expr(substitute(e.term(), pi, alpha, session));
  return Expr(substitute(e.stack(), pi, alpha, session));
}

// ---------------------------------------------------------------------------
// alpha equivalence

namespace {

using Env = std::map<VarName, uint32_t>;

bool aeq_term(const TermPtr& a, const TermPtr& b, Env& ea, Env& eb,
              uint32_t& level);

bool aeq_var(const VarName& va, const VarName& vb, const Env& ea,
             const Env& eb) {
  auto ia = ea.find(va);
  auto ib = eb.find(vb);
  if (ia != ea.end() || ib != eb.end()) {
    return ia != ea.end() && ib != eb.end() && ia->second == ib->second;
  }
  return va == vb;
}

bool aeq_stack(const StackPtr& a, const StackPtr& b, Env& ea, Env& eb,
               uint32_t& level) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Stack::Kind::Nil:
      return true;
    case Stack::Kind::Var:
      return aeq_var(a->var, b->var, ea, eb);
    case Stack::Kind::Cdr:
      return aeq_stack(a->rest, b->rest, ea, eb, level);
    case Stack::Kind::Push:
      return aeq_term(a->head, b->head, ea, eb, level) &&
             aeq_stack(a->rest, b->rest, ea, eb, level);
  }
  return false;
}

bool aeq_term(const TermPtr& a, const TermPtr& b, Env& ea, Env& eb,
              uint32_t& level) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Car:
      return aeq_stack(a->stack, b->stack, ea, eb, level);
    case Term::Kind::App:
      return aeq_term(a->body, b->body, ea, eb, level) &&
             aeq_stack(a->stack, b->stack, ea, eb, level);
    case Term::Kind::Abs: {
      uint32_t lv = level++;
      auto olda = ea.find(a->binder) != ea.end()
                      ? std::optional<uint32_t>(ea[a->binder])
                      : std::nullopt;
      auto oldb = eb.find(b->binder) != eb.end()
                      ? std::optional<uint32_t>(eb[b->binder])
                      : std::nullopt;
      ea[a->binder] = lv;
      eb[b->binder] = lv;
      bool ok = aeq_term(a->body, b->body, ea, eb, level);
      if (olda) ea[a->binder] = *olda; else ea.erase(a->binder);
      if (oldb) eb[b->binder] = *oldb; else eb.erase(b->binder);
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  Env ea, eb;
  uint32_t level = 0;
  return aeq_term(a, b, ea, eb, level);
}

bool alpha_eq(const StackPtr& a, const StackPtr& b) {
  Env ea, eb;
  uint32_t level = 0;
  return aeq_stack(a, b, ea, eb, level);
}

bool alpha_eq(const Expr& a, const Expr& b) {
  if (a.is_term() != b.is_term()) return false;
  return a.is_term() ? alpha_eq(a.term(), b.term())
                     : alpha_eq(a.stack(), b.stack());
}

// ---------------------------------------------------------------------------
// alpha-invariant keys

namespace {

void key_term(const TermPtr& t, Env& env, uint32_t& level, std::string& out);

void key_stack(const StackPtr& s, Env& env, uint32_t& level, std::string& out) {
  switch (s->kind) {
    case Stack::Kind::Nil:
      out += "n";
      return;
    case Stack::Kind::Var: {
      auto it = env.find(s->var);
      if (it != env.end()) {
        out += "b" + std::to_string(it->second);
      } else {
        out += "f" + s->var.str();
      }
      out += ";";
      return;
    }
    case Stack::Kind::Cdr:
      out += "d(";
      key_stack(s->rest, env, level, out);
      out += ")";
      return;
    case Stack::Kind::Push:
      out += "p(";
      key_term(s->head, env, level, out);
      out += ",";
      key_stack(s->rest, env, level, out);
      out += ")";
      return;
  }
}

void key_term(const TermPtr& t, Env& env, uint32_t& level, std::string& out) {
  switch (t->kind) {
    case Term::Kind::Car:
      out += "c(";
      key_stack(t->stack, env, level, out);
      out += ")";
      return;
    case Term::Kind::App:
      out += "a(";
      key_term(t->body, env, level, out);
      out += ",";
      key_stack(t->stack, env, level, out);
      out += ")";
      return;
    case Term::Kind::Abs: {
      uint32_t lv = level++;
      auto old = env.find(t->binder) != env.end()
                     ? std::optional<uint32_t>(env[t->binder])
                     : std::nullopt;
      env[t->binder] = lv;
      out += "L" + std::to_string(lv) + "(";
      key_term(t->body, env, level, out);
      out += ")";
      if (old) env[t->binder] = *old; else env.erase(t->binder);
      return;
    }
  }
}

}  // namespace

std::string alpha_key(const TermPtr& t) {
  Env env;
  uint32_t level = 0;
  std::string out = "t:";
  key_term(t, env, level, out);
  return out;
}

std::string alpha_key(const StackPtr& s) {
  Env env;
  uint32_t level = 0;
  std::string out = "s:";
  key_stack(s, env, level, out);
  return out;
}

std::string alpha_key(const Expr& e) {
  return e.is_term() ? alpha_key(e.term()) : alpha_key(e.stack());
}

// ---------------------------------------------------------------------------
// canonical (car/cdr-normal) forms

namespace {

TermPtr canon_term(const TermPtr& t);

StackPtr canon_stack(const StackPtr& s) {
  switch (s->kind) {
    case Stack::Kind::Nil:
    case Stack::Kind::Var:
      return s;
    case Stack::Kind::Cdr: {
      StackPtr inner = canon_stack(s->rest);
      if (inner->kind == Stack::Kind::Push) return inner->rest;
      return cdr(inner);
    }
    case Stack::Kind::Push:
      return push(canon_term(s->head), canon_stack(s->rest));
  }
  return s;
}

TermPtr canon_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Car: {
      StackPtr inner = canon_stack(t->stack);
      if (inner->kind == Stack::Kind::Push) return inner->head;
      return car(inner);
    }
    case Term::Kind::Abs:
      return abs(t->binder, canon_term(t->body));
    case Term::Kind::App:
      return app(canon_term(t->body), canon_stack(t->stack));
  }
  return t;
}

}  // namespace

TermPtr canonical_form(const TermPtr& t) { return canon_term(t); }
StackPtr canonical_form(const StackPtr& s) { return canon_stack(s); }

Expr canonical_form(const Expr& e) {
  if (e.is_term()) return Expr(canonical_form(e.term()));
  return Expr(canonical_form(e.stack()));
}

SpineView spine_of(const StackPtr& s) {
  SpineView v;
  StackPtr cur = s;
  while (cur->kind == Stack::Kind::Push) {
    v.terms.push_back(cur->head);
    cur = cur->rest;
  }
  while (cur->kind == Stack::Kind::Cdr) {
    ++v.cdr_count;
    cur = cur->rest;
  }
  if (cur->kind == Stack::Kind::Var) {
    v.tail_is_var = true;
    v.tail_var = cur->var;
  }
  return v;
}

StackPtr spine_to_stack(const SpineView& v) {
  StackPtr tail = v.tail_is_var ? svar(v.tail_var) : nil();
  tail = cdrn(tail, v.cdr_count);
  for (auto it = v.terms.rbegin(); it != v.terms.rend(); ++it) {
    tail = push(*it, tail);
  }
  return tail;
}

// ---------------------------------------------------------------------------
// dialect

bool original_valid(const StackPtr& s) {
  switch (s->kind) {
    case Stack::Kind::Nil:
    case Stack::Kind::Var:
      return true;
    case Stack::Kind::Cdr:
      return original_valid(s->rest);
    case Stack::Kind::Push:
      return original_valid(s->head) && original_valid(s->rest);
  }
  return false;
}

bool original_valid(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Car:
      return original_valid(t->stack);
    case Term::Kind::Abs:
      // The body must be a process M @ pi.
      return t->body->kind == Term::Kind::App &&
             original_valid(t->body->body) && original_valid(t->body->stack);
    case Term::Kind::App:
      return false;  // processes are not original terms
  }
  return false;
}

bool original_valid(const Expr& e) {
  return e.is_term() ? original_valid(e.term()) : original_valid(e.stack());
}

}  // namespace stackcalc
