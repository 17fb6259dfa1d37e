#include "stackcalc/separator.hpp"

#include <algorithm>
#include <cassert>

#include "stackcalc/constants.hpp"
#include "stackcalc/reduction.hpp"

namespace stackcalc {

namespace {

constexpr uint64_t kInternalFuel = 20000;

TermPtr the_T() { return constant("T"); }
TermPtr the_F() { return constant("F"); }
TermPtr the_I() { return constant("I"); }

StackPtr pushes(const std::vector<TermPtr>& terms, StackPtr tail) {
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    tail = push(*it, tail);
  }
  return tail;
}

}  // namespace

TermPtr permutator(uint32_t q) {
  VarName d{"d"};
  std::vector<VarName> binders;
  for (uint32_t i = 1; i <= q; ++i) binders.push_back(VarName{"e", i});
  binders.push_back(d);
  TermPtr body = car(svar(d));
  for (uint32_t i = 1; i <= q; ++i) body = app(body, svar(VarName{"e", i}));
  return abs_chain(binders, body);
}

StackPtr perm_stack(const VarName& eps, uint32_t q, uint32_t p) {
  StackPtr s = svar(eps);
  TermPtr spt = permutator(q);
  for (uint32_t i = 0; i < p; ++i) s = push(spt, s);
  return s;
}

namespace {

// bd e. [.] @ ((bd d. F @ e) :: (bd d. T @ e) :: e) sends T-convertible
// terms to F and F-convertible terms to T.
HeadContext make_swapper(FreshSession& session) {
  VarName e = session.fresh("e");
  VarName d = session.fresh("d");
  TermPtr to_f = abs(d, app(the_F(), svar(e)));
  TermPtr to_t = abs(d, app(the_T(), svar(e)));
  HeadContext c;
  c.frames.push_back(Frame::bind(e));
  c.frames.push_back(Frame::apply(push(to_f, push(to_t, svar(e)))));
  return c;
}

std::vector<TermPtr> repeat_I(uint32_t count) {
  return std::vector<TermPtr>(count, the_I());
}

}  // namespace

// ---------------------------------------------------------------------------
// Bohm-out

std::optional<BohmOutDetail> bohm_out_detail(const TermPtr& m,
                                             const NodePath& sigma, uint32_t q,
                                             uint32_t p, uint64_t fuel,
                                             bool allow_virtual) {
  FreshSession session;
  session.reserve_all(m);
  BohmOutDetail detail;
  detail.q = q;
  detail.p = p;
  TermPtr cur = m;

  for (const auto& [j, jp] : sigma.pairs) {
    if (j == 0 || jp == 0) {
      throw PathNotInDomainError("node indices are 1-based");
    }
    HeadResult h = head_normalize(cur, fuel);
    if (h.status == StrategyStatus::Diverged) return std::nullopt;
    if (h.status == StrategyStatus::Improper) {
      throw PathNotInDomainError("path crosses an improper hnf");
    }
    // Rename the binders to globally fresh names so strip applications and
    // the substitution log never collide across steps.
    std::vector<VarName> fresh_binders;
    for (const auto& b : h.view->binders) {
      fresh_binders.push_back(session.fresh(b.base));
    }
    HnfView view = rename_binders(*h.view, fresh_binders, session);

    uint32_t arity = static_cast<uint32_t>(view.args.size());
    uint32_t weight = view.head.index;
    if (q < arity || q < j) {
      throw BoundsTooSmallError("q must cover the breadth along the path");
    }
    if (p < weight + 1) {
      throw BoundsTooSmallError("p must exceed the weight along the path");
    }

    VarName eps = session.fresh("eps");
    bool already_substituted = false;
    for (const auto& [beta, _] : detail.substitutions) {
      if (beta == view.head.var) {
        already_substituted = true;
        break;
      }
    }
    int bound_pos = -1;
    if (!already_substituted) {
      for (size_t i = view.binders.size(); i-- > 0;) {
        if (view.binders[i] == view.head.var) {
          bound_pos = static_cast<int>(i);
          break;
        }
      }
    }

    std::vector<Frame> step;
    // C'': feed the permutator leftovers, then select child (j, j').
    std::vector<VarName> leftover;
    for (uint32_t i = arity + 1; i <= q; ++i) {
      leftover.push_back(session.fresh("w"));
    }
    std::vector<VarName> sel_binders;
    for (uint32_t i = 0; i < q; ++i) sel_binders.push_back(session.fresh("s"));
    TermPtr selector =
        abs_chain(sel_binders, carn(svar(sel_binders[j - 1]), jp - 1));
    step.push_back(Frame::apply(push(selector, svar(eps))));
    for (auto it = leftover.rbegin(); it != leftover.rend(); ++it) {
      step.push_back(Frame::apply(svar(*it)));
    }
    // C': strip the binders, routing the head variable through sps.
    StackPtr sps = perm_stack(eps, q, p);
    if (already_substituted) {
      for (size_t i = view.binders.size(); i-- > 0;) {
        step.push_back(Frame::apply(svar(view.binders[i])));
      }
    } else if (bound_pos >= 0) {
      for (size_t i = view.binders.size(); i-- > 0;) {
        if (static_cast<int>(i) == bound_pos) {
          step.push_back(Frame::apply(sps));
        } else {
          step.push_back(Frame::apply(svar(view.binders[i])));
        }
      }
      detail.substitutions.emplace_back(view.head.var, eps);
    } else {
      step.push_back(Frame::apply(sps));
      step.push_back(Frame::bind(view.head.var));
      for (size_t i = view.binders.size(); i-- > 0;) {
        step.push_back(Frame::apply(svar(view.binders[i])));
      }
      detail.substitutions.emplace_back(view.head.var, eps);
    }
    detail.context.frames.insert(detail.context.frames.begin(), step.begin(),
                                 step.end());

    // The next node, materializing eta-expansion children when allowed.
    if (j <= arity) {
      SpineView spine = spine_of(view.args[j - 1]);
      uint32_t len = static_cast<uint32_t>(spine.terms.size());
      if (jp <= len) {
        cur = spine.terms[jp - 1];
      } else if (spine.tail_is_var && allow_virtual) {
        cur = carn(svar(spine.tail_var), spine.cdr_count + (jp - len) - 1);
      } else {
        throw PathNotInDomainError("child index beyond the stack");
      }
    } else {
      if (!allow_virtual) {
        throw PathNotInDomainError("stack index beyond the breadth");
      }
      cur = carn(svar(leftover[j - arity - 1]), jp - 1);
    }
  }

  detail.target = cur;
  for (const auto& [beta, eps] : detail.substitutions) {
    detail.target = substitute(detail.target, perm_stack(eps, q, p), beta,
                               session);
  }
  return detail;
}

std::optional<HeadContext> bohm_out(const TermPtr& m, uint32_t n_bound,
                                    const NodePath& sigma, uint32_t q,
                                    uint32_t p, uint64_t fuel) {
  if (sigma.length() > n_bound) {
    throw PathNotInDomainError("path longer than the depth bound");
  }
  NodeResult node = node_at(m, sigma, fuel);
  if (node.status == NodeStatus::Undefined) {
    throw PathNotInDomainError("path not in the Bohm-tree domain");
  }
  if (node.status == NodeStatus::Unknown) return std::nullopt;
  auto detail = bohm_out_detail(m, sigma, q, p, fuel, /*allow_virtual=*/false);
  if (!detail) return std::nullopt;
  return detail->context;
}

// ---------------------------------------------------------------------------
// the particular separability theorem

namespace {

// bd c. car(cdr^n(head)) @ (terms :: cdr^k(tail))
struct SingleShape {
  VarName binder;
  VarName head;
  uint32_t n = 0;
  std::vector<TermPtr> terms;
  uint32_t k = 0;
  bool tail_is_var = false;
  VarName tail{};

  uint32_t arg_count() const { return static_cast<uint32_t>(terms.size()); }

  StackPtr stack() const {
    SpineView v;
    v.terms = terms;
    v.cdr_count = k;
    v.tail_is_var = tail_is_var;
    v.tail_var = tail;
    return spine_to_stack(v);
  }

  TermPtr term() const {
    return abs(binder, app(carn(svar(head), n), stack()));
  }
};

SingleShape single_shape(const TermPtr& t, const VarName& c,
                         FreshSession& session) {
  auto view = decompose_hnf(t);
  if (!view || view->binders.size() != 1 || view->args.size() != 1 ||
      !view->head.proper) {
    throw NotInShapeError(
        "expected bd a. car(cdr^n(b)) @ pi with a proper head");
  }
  HnfView renamed = rename_binders(*view, {c}, session);
  SpineView spine = spine_of(renamed.args[0]);
  SingleShape s;
  s.binder = c;
  s.head = renamed.head.var;
  s.n = renamed.head.index;
  s.terms = spine.terms;
  s.k = spine.cdr_count;
  s.tail_is_var = spine.tail_is_var;
  s.tail = spine.tail_var;
  return s;
}

// bd c. (bd gamma. [.] @ c) @ sigma  -- the case-reduction contexts of the
// particular theorem.
HeadContext tail_subst_context(const VarName& c, const VarName& gamma,
                               StackPtr sigma) {
  HeadContext ctx;
  ctx.frames.push_back(Frame::bind(c));
  ctx.frames.push_back(Frame::apply(std::move(sigma)));
  ctx.frames.push_back(Frame::bind(gamma));
  ctx.frames.push_back(Frame::apply(svar(c)));
  return ctx;
}

SingleShape reshape(const HeadContext& ctx, const SingleShape& s,
                    const VarName& c, FreshSession& session) {
  HeadResult h = head_normalize(plug(ctx, s.term()), kInternalFuel);
  if (!h.proper()) {
    throw NotInShapeError("case reduction lost the proper hnf shape");
  }
  return single_shape(recompose(*h.view), c, session);
}

bool converts_to(const TermPtr& t, const TermPtr& target, uint64_t fuel) {
  return convertible(Expr(t), Expr(target), RuleSet::sigma(), fuel) ==
         Tri::Yes;
}

}  // namespace

std::optional<Certificate> separate_single(const TermPtr& m, const TermPtr& n) {
  FreshSession session;
  session.reserve_all(m);
  session.reserve_all(n);
  VarName c = session.fresh("c");
  SingleShape left = single_shape(m, c, session);
  SingleShape right = single_shape(n, c, session);

  Certificate cert;
  cert.fuel_used = kInternalFuel;
  HeadContext pre;  // accumulated case-reduction contexts, outside-in
  bool swapped = false;

  for (int guard = 0; guard < 6; ++guard) {
    if (left.head != right.head) {
      // Case (1): different head variables.
      VarName eps = session.fresh("eps");
      VarName d = session.fresh("d");
      TermPtr to_t = abs(d, app(the_T(), svar(eps)));
      TermPtr to_f = abs(d, app(the_F(), svar(eps)));
      StackPtr pi_m = pushes(repeat_I(left.n), push(to_t, svar(eps)));
      StackPtr pi_n = pushes(repeat_I(right.n), push(to_f, svar(eps)));
      HeadContext fin;
      fin.frames.push_back(Frame::bind(eps));
      fin.frames.push_back(Frame::apply(pi_n));
      fin.frames.push_back(Frame::bind(right.head));
      fin.frames.push_back(Frame::apply(pi_m));
      fin.frames.push_back(Frame::bind(left.head));
      fin.frames.push_back(Frame::apply(svar(c)));
      cert.case_path.push_back("single(1)");
      cert.context = compose(fin, pre);
      break;
    }
    if (left.n != right.n) {
      // Case (2): same head, different projection index.
      VarName eps = session.fresh("eps");
      VarName d = session.fresh("d");
      TermPtr to_t = abs(d, app(the_T(), svar(eps)));
      TermPtr to_f = abs(d, app(the_F(), svar(eps)));
      uint32_t hi = std::max(left.n, right.n);
      std::vector<TermPtr> terms;
      for (uint32_t i = 0; i <= hi; ++i) {
        if (i == left.n) {
          terms.push_back(to_t);
        } else if (i == right.n) {
          terms.push_back(to_f);
        } else {
          terms.push_back(the_I());
        }
      }
      HeadContext fin;
      fin.frames.push_back(Frame::bind(eps));
      fin.frames.push_back(Frame::apply(pushes(terms, svar(eps))));
      fin.frames.push_back(Frame::bind(left.head));
      fin.frames.push_back(Frame::apply(svar(c)));
      cert.case_path.push_back("single(2)");
      cert.context = compose(fin, pre);
      break;
    }
    if (stack_similar(left.stack(), right.stack()).similar()) {
      return std::nullopt;  // the inputs are similar
    }
    // Both stacks are variable-tailed now (a nil tail would be similar).
    if (left.tail != right.tail) {
      if (left.tail == left.head) {
        // Case (3.1.2): push the other tail onto the head variable.
        uint32_t shift = right.arg_count() + left.arg_count() + left.k + 1;
        HeadContext step = tail_subst_context(
            c, right.tail, cdrn(svar(left.head), shift));
        cert.case_path.push_back("single(3.1.2)");
        left = reshape(step, left, c, session);
        right = reshape(step, right, c, session);
        pre = compose(step, pre);
      } else if (right.tail == right.head) {
        // Case (3.1.2) with the roles of the tails exchanged.
        uint32_t shift = left.arg_count() + right.arg_count() + right.k + 1;
        HeadContext step =
            tail_subst_context(c, left.tail, cdrn(svar(right.head), shift));
        cert.case_path.push_back("single(3.1.2)");
        left = reshape(step, left, c, session);
        right = reshape(step, right, c, session);
        pre = compose(step, pre);
      } else {
        // Case (3.1.1): substitute the head for the left tail.
        HeadContext step = tail_subst_context(c, left.tail, svar(left.head));
        cert.case_path.push_back("single(3.1.1)");
        left = reshape(step, left, c, session);
        right = reshape(step, right, c, session);
        pre = compose(step, pre);
      }
      continue;
    }
    if (left.tail != left.head) {
      // Case (3.2.1): common tail, distinct from the head.
      HeadContext step = tail_subst_context(c, left.tail, svar(left.head));
      cert.case_path.push_back("single(3.2.1)");
      left = reshape(step, left, c, session);
      right = reshape(step, right, c, session);
      pre = compose(step, pre);
      continue;
    }
    // Case (3.2.2): tails equal the head variable; count the spines.
    if (left.arg_count() < right.arg_count()) {
      std::swap(left, right);
      swapped = !swapped;
      cert.case_path.push_back("swap");
    }
    uint32_t dm = left.arg_count() - right.arg_count();
    uint32_t dk = left.k > right.k ? left.k - right.k : right.k - left.k;
    uint32_t e = std::min(dk, dm);
    VarName eps = session.fresh("eps");
    VarName d1 = session.fresh("d");
    VarName d2 = session.fresh("d");
    TermPtr x = left.k < right.k
                    ? abs(d1, app(car(svar(d1)), cdrn(svar(eps), 2)))
                    : abs(d1, app(carn(svar(d1), e), cdrn(svar(eps), 2)));
    TermPtr y = abs(d2, app(x, cdrn(svar(d2),
                                    left.n + 1 + left.arg_count())));
    std::vector<TermPtr> terms = repeat_I(left.n);
    terms.push_back(y);
    uint32_t reps = dm + std::max(left.k, right.k);
    for (uint32_t i = 0; i < reps; ++i) {
      terms.push_back(carn(svar(eps), 1));
    }
    terms.push_back(car(svar(eps)));
    HeadContext fin;
    fin.frames.push_back(Frame::bind(eps));
    fin.frames.push_back(Frame::apply(pushes(terms, svar(eps))));
    fin.frames.push_back(Frame::bind(left.head));
    fin.frames.push_back(Frame::apply(svar(c)));
    cert.case_path.push_back("single(3.2.2)");
    cert.context = compose(fin, pre);
    // Which Boolean lands on which side depends on the spine arithmetic;
    // settle it by reduction.
    TermPtr probe = plug(cert.context, swapped ? n : m);
    if (converts_to(probe, the_F(), kInternalFuel)) {
      swapped = !swapped;
    }
    break;
  }

  if (cert.context.frames.empty()) {
    throw NotInShapeError("case analysis did not terminate");
  }
  if (swapped) {
    cert.context = compose(make_swapper(session), cert.context);
    cert.case_path.push_back("target-swap");
  }
  cert.left_target = the_T();
  cert.right_target = the_F();
  cert.verified = verify_certificate(cert, m, n, kInternalFuel);
  return cert;
}

// ---------------------------------------------------------------------------
// the general separability theorem

namespace {

struct AlignedGeneral {
  HnfView left;
  HnfView right;
  std::vector<VarName> shared;
};

AlignedGeneral align_general(const HnfView& l, const HnfView& r,
                             FreshSession& session) {
  AlignedGeneral out;
  size_t need = std::max(l.binders.size(), r.binders.size());
  for (size_t i = 0; i < need; ++i) out.shared.push_back(session.fresh("c"));
  out.left = rename_binders(l, out.shared, session);
  out.right = rename_binders(r, out.shared, session);
  return out;
}

// Inner applications [.] @ c_1 @ ... @ c_t, listed outside-in.
void push_strip_frames(std::vector<Frame>& frames,
                       const std::vector<VarName>& shared, size_t count) {
  for (size_t i = count; i-- > 0;) {
    frames.push_back(Frame::apply(svar(shared[i])));
  }
}

std::optional<Certificate> general_core(const TermPtr& m, const TermPtr& n,
                                        const HnfView& lview,
                                        const HnfView& rview, uint64_t fuel);

}  // namespace

std::optional<Certificate> separate_general(const TermPtr& m, const TermPtr& n,
                                            uint64_t fuel) {
  HeadResult hl = head_normalize(m, fuel);
  HeadResult hr = head_normalize(n, fuel);
  if (!hl.proper() || !hr.proper()) {
    throw NoProperHnfError("both sides must reach a proper hnf");
  }
  if (hl.view->binders.size() > hr.view->binders.size()) {
    auto inner = general_core(n, m, *hr.view, *hl.view, fuel);
    if (!inner) return std::nullopt;
    FreshSession session;
    session.reserve_all(plug(inner->context, m));
    session.reserve_all(plug(inner->context, n));
    Certificate cert = *inner;
    cert.context = compose(make_swapper(session), inner->context);
    cert.case_path.insert(cert.case_path.begin(), "swap");
    cert.verified = verify_certificate(cert, m, n, fuel);
    return cert;
  }
  return general_core(m, n, *hl.view, *hr.view, fuel);
}

namespace {

std::optional<Certificate> general_core(const TermPtr& m, const TermPtr& n,
                                        const HnfView& lview,
                                        const HnfView& rview, uint64_t fuel) {
  FreshSession session;
  session.reserve_all(m);
  session.reserve_all(n);
  session.reserve_all(recompose(lview));
  session.reserve_all(recompose(rview));

  AlignedGeneral al = align_general(lview, rview, session);
  const HnfView& lv = al.left;
  const HnfView& rv = al.right;
  uint32_t k = static_cast<uint32_t>(lv.binders.size());
  uint32_t kp = static_cast<uint32_t>(rv.binders.size());
  uint32_t ml = static_cast<uint32_t>(lv.args.size());
  uint32_t mr = static_cast<uint32_t>(rv.args.size());

  SimVerdict sim = term_similar(m, n, fuel);
  if (sim.similar()) return std::nullopt;
  if (sim.status == SimStatus::Unknown) return std::nullopt;
  const std::string& reason = sim.reason;

  Certificate cert;
  cert.fuel_used = fuel;
  VarName eps = session.fresh("eps");
  bool swapped = false;

  if (reason == "head-var") {
    // Case (1): route each head to its own Boolean-producing block.
    std::vector<VarName> dl, dr;
    for (uint32_t i = 0; i < ml + (kp - k); ++i) dl.push_back(session.fresh("d"));
    for (uint32_t i = 0; i < mr; ++i) dr.push_back(session.fresh("d"));
    TermPtr yt = abs_chain(dl, the_T());
    TermPtr yf = abs_chain(dr, the_F());
    std::vector<TermPtr> pl = repeat_I(lv.head.index);
    pl.push_back(yt);
    std::vector<TermPtr> pr = repeat_I(rv.head.index);
    pr.push_back(yf);
    cert.context.frames.push_back(Frame::apply(pushes(pr, svar(eps))));
    cert.context.frames.push_back(Frame::apply(pushes(pl, svar(eps))));
    cert.context.frames.push_back(Frame::bind(lv.head.var));
    cert.context.frames.push_back(Frame::bind(rv.head.var));
    push_strip_frames(cert.context.frames, al.shared, kp);
    cert.case_path.push_back("general(1)");
  } else if (reason == "head-index") {
    // Case (2): one block per index, the rest identities.
    std::vector<VarName> dl, dr;
    for (uint32_t i = 0; i < ml + (kp - k); ++i) dl.push_back(session.fresh("d"));
    for (uint32_t i = 0; i < mr; ++i) dr.push_back(session.fresh("d"));
    TermPtr yt = abs_chain(dl, the_T());
    TermPtr yf = abs_chain(dr, the_F());
    uint32_t hi = std::max(lv.head.index, rv.head.index);
    std::vector<TermPtr> terms;
    for (uint32_t i = 0; i <= hi; ++i) {
      if (i == lv.head.index) {
        terms.push_back(yt);
      } else if (i == rv.head.index) {
        terms.push_back(yf);
      } else {
        terms.push_back(the_I());
      }
    }
    cert.context.frames.push_back(Frame::apply(pushes(terms, svar(eps))));
    cert.context.frames.push_back(Frame::bind(lv.head.var));
    push_strip_frames(cert.context.frames, al.shared, kp);
    cert.case_path.push_back("general(2)");
  } else if (reason == "arity") {
    // Case (3): arity discrimination via an overflow selector.
    uint32_t p = ml + (kp - k);
    uint32_t big = std::max(p, mr);
    uint32_t h = p > mr ? p - mr : mr - p;
    std::vector<VarName> sel;
    for (uint32_t i = 0; i <= big; ++i) sel.push_back(session.fresh("a"));
    TermPtr y = abs_chain(sel, car(svar(sel.back())));
    std::vector<TermPtr> pl = repeat_I(lv.head.index);
    pl.push_back(y);
    VarName delta = session.fresh("d");
    std::vector<VarName> ws;
    for (uint32_t i = 0; i < h; ++i) ws.push_back(session.fresh("w"));
    HeadContext c1;
    c1.frames.push_back(Frame::apply(pushes(pl, svar(eps))));
    c1.frames.push_back(Frame::bind(lv.head.var));
    for (size_t i = ws.size(); i-- > 0;) {
      c1.frames.push_back(Frame::apply(svar(ws[i])));
    }
    c1.frames.push_back(Frame::apply(svar(delta)));
    push_strip_frames(c1.frames, al.shared, kp);
    std::vector<VarName> bs;
    for (uint32_t i = 0; i < h; ++i) bs.push_back(session.fresh("b"));
    HeadContext c2;
    c2.frames.push_back(Frame::apply(push(the_F(), svar(eps))));
    c2.frames.push_back(
        Frame::apply(push(abs_chain(bs, the_T()), svar(eps))));
    c2.frames.push_back(Frame::bind(delta));
    c2.frames.push_back(Frame::bind(ws.back()));
    cert.context = compose(c2, c1);
    cert.case_path.push_back("general(3)");
    if (p < mr) swapped = true;
  } else if (reason.rfind("arg-stack:", 0) == 0 ||
             reason.rfind("eta-surplus:", 0) == 0) {
    // Cases (4) and (5): project the disagreeing position and recurse into
    // the particular theorem.
    bool surplus = reason.rfind("eta-surplus:", 0) == 0;
    uint32_t j = static_cast<uint32_t>(
        std::stoul(reason.substr(reason.find(':') + 1)));
    std::vector<VarName> xs;
    for (uint32_t i = 0; i < mr; ++i) xs.push_back(session.fresh("x"));
    VarName b2 = session.fresh("b");
    std::vector<VarName> xbinders = xs;
    xbinders.push_back(b2);
    TermPtr proj = abs_chain(xbinders, app(car(svar(b2)), svar(xs[j - 1])));
    std::vector<TermPtr> pl = repeat_I(lv.head.index);
    pl.push_back(proj);
    HeadContext c1;
    c1.frames.push_back(Frame::apply(pushes(pl, svar(eps))));
    c1.frames.push_back(Frame::bind(lv.head.var));
    push_strip_frames(c1.frames, al.shared, kp);
    HeadResult el = head_normalize(plug(c1, m), fuel);
    HeadResult er = head_normalize(plug(c1, n), fuel);
    if (!el.proper() || !er.proper()) return std::nullopt;
    auto inner = separate_single(recompose(*el.view), recompose(*er.view));
    if (!inner) return std::nullopt;
    cert.context = compose(inner->context, c1);
    cert.case_path.push_back(surplus ? "general(5)" : "general(4)");
    cert.case_path.insert(cert.case_path.end(), inner->case_path.begin(),
                          inner->case_path.end());
  } else {
    return std::nullopt;  // improper or fuel-bound comparisons land here
  }

  if (swapped) {
    cert.context = compose(make_swapper(session), cert.context);
    cert.case_path.push_back("target-swap");
  }
  cert.left_target = the_T();
  cert.right_target = the_F();
  cert.verified = verify_certificate(cert, m, n, fuel);
  if (!cert.verified) {
    // The Boolean orientation of case (3) depends on spine arithmetic the
    // direct computation settles; re-orient once before giving up.
    Certificate flipped = cert;
    FreshSession fsession;
    fsession.reserve_all(plug(cert.context, m));
    flipped.context = compose(make_swapper(fsession), cert.context);
    flipped.case_path.push_back("target-swap");
    flipped.verified = verify_certificate(flipped, m, n, fuel);
    if (flipped.verified) return flipped;
  }
  return cert;
}

}  // namespace

// ---------------------------------------------------------------------------
// end-to-end separation

namespace {

struct PathStats {
  uint32_t max_breadth = 0;
  uint32_t max_weight = 0;
  bool ok = false;
};

// Breadth/weight maxima over the proper prefixes of sigma, following the
// same (possibly virtual) stepping as the Bohm-out walk.
PathStats walk_stats(const TermPtr& m, const NodePath& sigma, uint64_t fuel) {
  PathStats st;
  TermPtr cur = m;
  for (const auto& [j, jp] : sigma.pairs) {
    HeadResult h = head_normalize(cur, fuel);
    if (!h.proper()) return st;
    const HnfView& v = *h.view;
    st.max_breadth = std::max<uint32_t>(st.max_breadth, v.args.size());
    st.max_weight = std::max(st.max_weight, v.head.index);
    uint32_t arity = static_cast<uint32_t>(v.args.size());
    if (j <= arity) {
      SpineView spine = spine_of(v.args[j - 1]);
      uint32_t len = static_cast<uint32_t>(spine.terms.size());
      if (jp <= len) {
        cur = spine.terms[jp - 1];
      } else if (spine.tail_is_var) {
        cur = carn(svar(spine.tail_var), spine.cdr_count + (jp - len) - 1);
      } else {
        return st;
      }
    } else {
      // Fresh-variable eta child; names do not matter for the statistics.
      cur = carn(svar(VarName{"w", j}), jp - 1);
    }
  }
  st.ok = true;
  return st;
}

std::optional<Certificate> tf_certificate(const TermPtr& m, const TermPtr& n,
                                          const NodePath& sigma, uint32_t q,
                                          uint32_t p, uint64_t fuel) {
  auto bo = bohm_out_detail(m, sigma, q, p, fuel, /*allow_virtual=*/true);
  if (!bo) return std::nullopt;
  HeadResult el = head_normalize(plug(bo->context, m), fuel);
  HeadResult er = head_normalize(plug(bo->context, n), fuel);
  if (!el.proper() || !er.proper()) return std::nullopt;
  auto gen =
      separate_general(recompose(*el.view), recompose(*er.view), fuel);
  if (!gen) return std::nullopt;
  Certificate cert = *gen;
  cert.context = compose(gen->context, bo->context);
  cert.case_path.insert(cert.case_path.begin(),
                        "bohm-out:" + sigma.str());
  cert.verified = verify_certificate(cert, m, n, fuel);
  return cert;
}

}  // namespace

SeparateResult separate(const TermPtr& m, const TermPtr& n, uint32_t depth,
                        uint64_t fuel) {
  SeparateResult result;
  SimSearchHit hit = sim_search(m, n, depth, fuel);
  if (hit.status == SimStatus::Similar) {
    result.status = SeparateStatus::NoneFound;
    result.note = "no dissimilar virtual node within depth";
    return result;
  }
  if (hit.status == SimStatus::Unknown) {
    result.status = SeparateStatus::Unknown;
    result.note = "similarity search hit the fuel bound";
    return result;
  }
  result.witness = hit.witness;
  const NodePath& sigma = hit.witness;
  uint32_t depth_here = static_cast<uint32_t>(sigma.length());

  TreeMetrics mm = bounded_metrics(m, depth_here, fuel);
  TreeMetrics mn = bounded_metrics(n, depth_here, fuel);
  if (!mm.exact || !mn.exact) {
    result.status = SeparateStatus::Unknown;
    result.note = "tree metrics not exact within fuel";
    return result;
  }
  uint32_t max_j = 0, max_jp = 0;
  for (const auto& [j, jp] : sigma.pairs) {
    max_j = std::max(max_j, j);
    max_jp = std::max(max_jp, jp);
  }
  PathStats sl = walk_stats(m, sigma, fuel);
  PathStats sr = walk_stats(n, sigma, fuel);
  uint32_t q = 1 + std::max({mm.bounded_breadth, mn.bounded_breadth, max_j,
                             sl.max_breadth, sr.max_breadth});
  uint32_t p = 1 + std::max({mm.bounded_weight, mn.bounded_weight, max_jp,
                             sl.max_weight, sr.max_weight});

  bool both_defined = hit.left_defined && hit.right_defined;
  bool tf_possible = both_defined && hit.reason != "improper-vs-proper" &&
                     hit.reason != "node-domain";

  try {
    if (tf_possible) {
      auto cert = tf_certificate(m, n, sigma, q, p, fuel);
      if (!cert || !cert->verified) {
        // Retry once with looser bounds before giving up.
        cert = tf_certificate(m, n, sigma, 2 * q + 2, 2 * p + 2, fuel);
      }
      if (cert && cert->verified) {
        result.status = SeparateStatus::Separated;
        result.certificate = std::move(cert);
        return result;
      }
      result.status = SeparateStatus::Unknown;
      result.note = "certificate construction failed verification";
      return result;
    }

    // Exactly one side has (or can have) a proper node at sigma: produce a
    // distinguishing hnf-status certificate by extracting along that side.
    const TermPtr& base = hit.left_defined ? m : n;
    auto bo = bohm_out_detail(base, sigma, q, p, fuel, /*allow_virtual=*/true);
    if (bo) {
      Certificate cert;
      cert.kind = Certificate::Kind::Distinguishing;
      cert.context = bo->context;
      cert.left_target = the_T();
      cert.right_target = the_F();
      cert.fuel_used = fuel;
      cert.case_path = {"bohm-out:" + sigma.str(), "hnf-status"};
      cert.verified = verify_certificate(cert, m, n, fuel);
      if (cert.verified) {
        result.status = SeparateStatus::Unknown;
        result.certificate = std::move(cert);
        result.note = "hnf-status witness only (no T/F certificate here)";
        return result;
      }
    }
  } catch (const Error&) {
    // fall through to Unknown
  }
  result.status = SeparateStatus::Unknown;
  result.note = "could not certify the disagreement at " + sigma.str();
  return result;
}

}  // namespace stackcalc
