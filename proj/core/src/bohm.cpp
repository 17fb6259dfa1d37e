#include "stackcalc/bohm.hpp"

#include <deque>
#include <sstream>

namespace stackcalc {

NodePath NodePath::prefix(size_t len) const {
  NodePath p;
  p.pairs.assign(pairs.begin(), pairs.begin() + len);
  return p;
}

NodePath NodePath::extended(std::pair<uint32_t, uint32_t> pr) const {
  NodePath p = *this;
  p.pairs.push_back(pr);
  return p;
}

std::string NodePath::str() const {
  if (pairs.empty()) return "eps";
  std::ostringstream os;
  for (const auto& [j, jp] : pairs) os << "(" << j << "," << jp << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// node access

NodeResult node_at(const TermPtr& m, const NodePath& sigma, uint64_t fuel) {
  TermPtr cur = m;
  for (const auto& [j, jp] : sigma.pairs) {
    HeadResult h = head_normalize(cur, fuel);
    if (h.status == StrategyStatus::Diverged) {
      return NodeResult{NodeStatus::Unknown, nullptr};
    }
    if (h.status == StrategyStatus::Improper) {
      return NodeResult{NodeStatus::Undefined, nullptr};
    }
    const HnfView& v = *h.view;
    if (j == 0 || j > v.args.size()) {
      return NodeResult{NodeStatus::Undefined, nullptr};
    }
    SpineView spine = spine_of(v.args[j - 1]);
    if (jp == 0 || jp > spine.terms.size()) {
      return NodeResult{NodeStatus::Undefined, nullptr};
    }
    cur = spine.terms[jp - 1];
  }
  return NodeResult{NodeStatus::Defined, cur};
}

TreeMetrics bounded_metrics(const TermPtr& m, uint32_t depth, uint64_t fuel) {
  TreeMetrics metrics;
  metrics.depth_bound = depth;
  struct Entry {
    TermPtr node;
    uint32_t len;
  };
  std::deque<Entry> queue;
  queue.push_back({m, 0});
  while (!queue.empty()) {
    Entry e = queue.front();
    queue.pop_front();
    HeadResult h = head_normalize(e.node, fuel);
    metrics.fuel_used += h.steps;
    if (h.status == StrategyStatus::Diverged) {
      metrics.exact = false;  // breadth/weight taken as 0, unverified
      continue;
    }
    if (h.status == StrategyStatus::Improper) continue;  // contributes 0
    const HnfView& v = *h.view;
    metrics.bounded_breadth =
        std::max<uint32_t>(metrics.bounded_breadth, v.args.size());
    metrics.bounded_weight =
        std::max<uint32_t>(metrics.bounded_weight, v.head.index);
    if (e.len >= depth) continue;
    for (const auto& arg : v.args) {
      for (const auto& child : spine_of(arg).terms) {
        queue.push_back({child, e.len + 1});
      }
    }
  }
  return metrics;
}

// ---------------------------------------------------------------------------
// path expansion and virtual nodes

namespace {

NodeResult expand_rec(const TermPtr& cur, const NodePath& sigma, size_t at,
                      uint64_t fuel, FreshSession& session) {
  if (at == sigma.length()) return NodeResult{NodeStatus::Defined, cur};
  auto [j, jp] = sigma.pairs[at];
  if (j == 0 || jp == 0) return NodeResult{NodeStatus::Undefined, nullptr};
  HeadResult h = head_normalize(cur, fuel);
  if (h.status == StrategyStatus::Diverged) {
    return NodeResult{NodeStatus::Unknown, nullptr};
  }
  if (h.status == StrategyStatus::Improper) {
    return NodeResult{NodeStatus::Undefined, nullptr};
  }
  HnfView v = *h.view;
  uint32_t m = static_cast<uint32_t>(v.args.size());
  if (j <= m) {
    SpineView spine = spine_of(v.args[j - 1]);
    uint32_t len = static_cast<uint32_t>(spine.terms.size());
    if (jp <= len || !spine.tail_is_var) {
      // Real-domain child or a nil tail: no expansion clause applies.
      return NodeResult{NodeStatus::Undefined, nullptr};
    }
    uint32_t count = jp - len;
    StackPtr tail = svar(spine.tail_var);
    // Grow the tail by count eta-steps; the last inserted term carries the
    // rest of the path.
    NodeResult deep = expand_rec(
        carn(tail, spine.cdr_count + count - 1), sigma, at + 1, fuel, session);
    if (!deep.defined()) return deep;
    SpineView grown = spine;
    for (uint32_t i = 0; i + 1 < count; ++i) {
      grown.terms.push_back(carn(tail, spine.cdr_count + i));
    }
    grown.terms.push_back(deep.term);
    grown.cdr_count = spine.cdr_count + count;
    v.args[j - 1] = spine_to_stack(grown);
    return NodeResult{NodeStatus::Defined, recompose(v)};
  }
  // j > m: append fresh binders and expand the last one.
  uint32_t extra = j - m;
  std::vector<VarName> fresh_vars;
  for (uint32_t i = 0; i < extra; ++i) fresh_vars.push_back(session.fresh("g"));
  const VarName& gamma = fresh_vars.back();
  NodeResult deep =
      expand_rec(carn(svar(gamma), jp - 1), sigma, at + 1, fuel, session);
  if (!deep.defined()) return deep;
  SpineView grown;
  for (uint32_t i = 0; i + 1 < jp; ++i) grown.terms.push_back(carn(svar(gamma), i));
  grown.terms.push_back(deep.term);
  grown.cdr_count = jp;
  grown.tail_is_var = true;
  grown.tail_var = gamma;
  for (uint32_t i = 0; i + 1 < extra; ++i) v.args.push_back(svar(fresh_vars[i]));
  v.args.push_back(spine_to_stack(grown));
  v.binders.insert(v.binders.end(), fresh_vars.begin(), fresh_vars.end());
  return NodeResult{NodeStatus::Defined, recompose(v)};
}

}  // namespace

NodeResult path_expand(const TermPtr& m, const NodePath& sigma, uint64_t fuel) {
  FreshSession session;
  session.reserve_all(m);
  return expand_rec(m, sigma, 0, fuel, session);
}

NodeResult virtual_node(const TermPtr& m, const NodePath& sigma,
                        uint64_t fuel) {
  // Longest real prefix.
  TermPtr cur = m;
  size_t idx = 0;
  while (idx < sigma.length()) {
    NodePath step;
    step.pairs.push_back(sigma.pairs[idx]);
    NodeResult child = node_at(cur, step, fuel);
    if (child.status == NodeStatus::Unknown) return child;
    if (child.status == NodeStatus::Undefined) break;
    cur = child.term;
    ++idx;
  }
  if (idx == sigma.length()) return NodeResult{NodeStatus::Defined, cur};
  NodePath rest;
  rest.pairs.assign(sigma.pairs.begin() + idx, sigma.pairs.end());
  NodeResult expanded = path_expand(cur, rest, fuel);
  if (!expanded.defined()) return expanded;
  return node_at(expanded.term, rest, fuel);
}

// ---------------------------------------------------------------------------
// similarity

SimVerdict stack_similar(const StackPtr& pi, const StackPtr& varpi) {
  SpineView a = spine_of(canonical_form(pi));
  SpineView b = spine_of(canonical_form(varpi));
  if (!a.tail_is_var || !b.tail_is_var) {
    return SimVerdict{SimStatus::Similar, {}, ""};
  }
  if (a.tail_var != b.tail_var) {
    return SimVerdict{SimStatus::Dissimilar, {}, "spine-tail-var"};
  }
  int64_t da = static_cast<int64_t>(a.cdr_count) -
               static_cast<int64_t>(a.terms.size());
  int64_t db = static_cast<int64_t>(b.cdr_count) -
               static_cast<int64_t>(b.terms.size());
  if (da != db) {
    return SimVerdict{SimStatus::Dissimilar, {}, "spine-arith"};
  }
  return SimVerdict{SimStatus::Similar, {}, ""};
}

namespace {

struct AlignedPair {
  HnfView left;
  HnfView right;
  std::vector<VarName> shared;
};

AlignedPair align_views(const HnfView& l, const HnfView& r) {
  AlignedPair out;
  FreshSession session;
  session.reserve_all(recompose(l));
  session.reserve_all(recompose(r));
  size_t need = std::max(l.binders.size(), r.binders.size());
  for (size_t i = 0; i < need; ++i) out.shared.push_back(session.fresh("v"));
  out.left = rename_binders(l, out.shared, session);
  out.right = rename_binders(r, out.shared, session);
  return out;
}

// Clause (1) of term similarity on aligned views; empty string means the
// views are similar at the surface.
std::string clause1_failure(const AlignedPair& p) {
  const HnfView& l = p.left;
  const HnfView& r = p.right;
  if (l.head.var != r.head.var) return "head-var";
  if (l.head.index != r.head.index) return "head-index";
  int64_t k = static_cast<int64_t>(l.binders.size());
  int64_t kp = static_cast<int64_t>(r.binders.size());
  int64_t m = static_cast<int64_t>(l.args.size());
  int64_t mp = static_cast<int64_t>(r.args.size());
  if (k - m != kp - mp) return "arity";
  int64_t shared_args = std::min(m, mp);
  for (int64_t j = 0; j < shared_args; ++j) {
    if (!stack_similar(l.args[j], r.args[j]).similar()) {
      return "arg-stack:" + std::to_string(j + 1);
    }
  }
  const HnfView& longer = (kp > k) ? r : l;
  int64_t min_k = std::min(k, kp);
  int64_t surplus = std::max(k, kp) - min_k;
  for (int64_t j = 1; j <= surplus; ++j) {
    const StackPtr& arg = longer.args[shared_args + j - 1];
    if (!stack_similar(arg, svar(p.shared[min_k + j - 1])).similar()) {
      return "eta-surplus:" + std::to_string(shared_args + j);
    }
  }
  return "";
}

}  // namespace

SimVerdict term_similar(const TermPtr& m, const TermPtr& n, uint64_t fuel) {
  HeadResult hl = head_normalize(m, fuel);
  HeadResult hr = head_normalize(n, fuel);
  bool ldiv = hl.status == StrategyStatus::Diverged;
  bool rdiv = hr.status == StrategyStatus::Diverged;
  if (ldiv || rdiv) {
    UnknownSide side = ldiv && rdiv ? UnknownSide::Both
                       : ldiv       ? UnknownSide::Left
                                    : UnknownSide::Right;
    return SimVerdict{SimStatus::Unknown, {}, "hnf-fuel", side};
  }
  bool lprop = hl.proper();
  bool rprop = hr.proper();
  if (!lprop && !rprop) return SimVerdict{SimStatus::Similar, {}, ""};
  if (lprop != rprop) {
    return SimVerdict{SimStatus::Dissimilar, {}, "improper-vs-proper"};
  }
  AlignedPair aligned = align_views(*hl.view, *hr.view);
  std::string fail = clause1_failure(aligned);
  if (fail.empty()) return SimVerdict{SimStatus::Similar, {}, ""};
  return SimVerdict{SimStatus::Dissimilar, {}, fail};
}

// ---------------------------------------------------------------------------
// bounded infinite-similarity search

namespace {

// How one side produces children at stack position j.
struct ChildSource {
  bool exists = false;       // position j addressable at all
  bool from_stack = false;   // real stack vs appended eta-binder
  SpineView spine;           // when from_stack
  VarName append_var{};      // when !from_stack

  uint32_t real_len() const {
    return from_stack ? static_cast<uint32_t>(spine.terms.size()) : 0;
  }
  bool infinite() const { return from_stack ? spine.tail_is_var : true; }

  // The child term at index jp (1-based); requires defined_at(jp).
  bool defined_at(uint32_t jp) const {
    if (!from_stack) return true;
    return jp <= real_len() || spine.tail_is_var;
  }
  TermPtr child(uint32_t jp) const {
    if (from_stack) {
      if (jp <= real_len()) return spine.terms[jp - 1];
      return carn(svar(spine.tail_var),
                  spine.cdr_count + (jp - real_len()) - 1);
    }
    return carn(svar(append_var), jp - 1);
  }
};

ChildSource child_source(const HnfView& view, uint32_t j,
                         const std::vector<VarName>& shared) {
  ChildSource src;
  src.exists = true;
  uint32_t m = static_cast<uint32_t>(view.args.size());
  if (j <= m) {
    src.from_stack = true;
    src.spine = spine_of(view.args[j - 1]);
  } else {
    // Appended binder position: by the arity agreement checked in clause
    // (1), k + (j - m) indexes the same shared name on both sides.
    size_t idx = view.binders.size() + (j - m);
    src.from_stack = false;
    src.append_var = idx <= shared.size() ? shared[idx - 1]
                                          : VarName{"g_out", j};
  }
  return src;
}

struct QueueEntry {
  enum class Kind { Compare, DomainMismatch };
  Kind kind;
  NodePath path;
  TermPtr left, right;     // Compare
  bool left_defined = false;   // DomainMismatch
  bool right_defined = false;
  TermPtr defined_node;    // DomainMismatch: the side that exists
};

}  // namespace

SimSearchHit sim_search(const TermPtr& m, const TermPtr& n, uint32_t depth,
                        uint64_t fuel) {
  std::deque<QueueEntry> queue;
  {
    QueueEntry root;
    root.kind = QueueEntry::Kind::Compare;
    root.left = m;
    root.right = n;
    queue.push_back(std::move(root));
  }
  bool unknown_seen = false;
  UnknownSide unknown_side = UnknownSide::None;
  NodePath unknown_path;

  FreshSession shared_session;
  shared_session.reserve_all(m);
  shared_session.reserve_all(n);

  while (!queue.empty()) {
    QueueEntry e = queue.front();
    queue.pop_front();

    if (e.kind == QueueEntry::Kind::DomainMismatch) {
      SimSearchHit hit;
      hit.status = SimStatus::Dissimilar;
      hit.witness = e.path;
      hit.reason = "node-domain";
      hit.left_defined = e.left_defined;
      hit.right_defined = e.right_defined;
      if (e.left_defined) hit.left_node = e.defined_node;
      if (e.right_defined) hit.right_node = e.defined_node;
      return hit;
    }

    HeadResult hl = head_normalize(e.left, fuel);
    HeadResult hr = head_normalize(e.right, fuel);
    bool ldiv = hl.status == StrategyStatus::Diverged;
    bool rdiv = hr.status == StrategyStatus::Diverged;
    if (ldiv || rdiv) {
      if (!unknown_seen) {
        unknown_seen = true;
        unknown_side = ldiv && rdiv ? UnknownSide::Both
                       : ldiv       ? UnknownSide::Left
                                    : UnknownSide::Right;
        unknown_path = e.path;
      }
      continue;
    }
    bool lprop = hl.proper();
    bool rprop = hr.proper();
    if (!lprop && !rprop) continue;  // both improper: similar leaf
    if (lprop != rprop) {
      SimSearchHit hit;
      hit.status = SimStatus::Dissimilar;
      hit.witness = e.path;
      hit.reason = "improper-vs-proper";
      hit.left_defined = hit.right_defined = true;
      hit.left_node = e.left;
      hit.right_node = e.right;
      hit.left_resolved = hit.right_resolved = true;
      hit.left_proper = lprop;
      hit.right_proper = rprop;
      return hit;
    }

    AlignedPair aligned = align_views(*hl.view, *hr.view);
    std::string fail = clause1_failure(aligned);
    if (!fail.empty()) {
      SimSearchHit hit;
      hit.status = SimStatus::Dissimilar;
      hit.witness = e.path;
      hit.reason = fail;
      hit.left_defined = hit.right_defined = true;
      hit.left_node = e.left;
      hit.right_node = e.right;
      hit.left_resolved = hit.right_resolved = true;
      hit.left_proper = hit.right_proper = true;
      return hit;
    }
    if (e.path.length() >= depth) continue;

    uint32_t lm = static_cast<uint32_t>(aligned.left.args.size());
    uint32_t rm = static_cast<uint32_t>(aligned.right.args.size());
    for (uint32_t j = 1; j <= std::max(lm, rm); ++j) {
      ChildSource ls = child_source(aligned.left, j, aligned.shared);
      ChildSource rs = child_source(aligned.right, j, aligned.shared);
      uint32_t max_len = std::max(ls.real_len(), rs.real_len());
      for (uint32_t jp = 1; jp <= max_len; ++jp) {
        bool ld = ls.defined_at(jp);
        bool rd = rs.defined_at(jp);
        if (ld && rd) {
              QueueEntry child;
          child.kind = QueueEntry::Kind::Compare;
          child.path = e.path.extended({j, jp});
          child.left = ls.child(jp);
          child.right = rs.child(jp);
          queue.push_back(std::move(child));
        } else if (ld != rd) {
          QueueEntry mm;
          mm.kind = QueueEntry::Kind::DomainMismatch;
          mm.path = e.path.extended({j, jp});
          mm.left_defined = ld;
          mm.right_defined = rd;
          mm.defined_node = ld ? ls.child(jp) : rs.child(jp);
          queue.push_back(mm);
        }
      }
      if (ls.infinite() != rs.infinite()) {
        QueueEntry mm;
        mm.kind = QueueEntry::Kind::DomainMismatch;
        mm.path = e.path.extended({j, max_len + 1});
        mm.left_defined = ls.infinite();
        mm.right_defined = rs.infinite();
        mm.defined_node =
            ls.infinite() ? ls.child(max_len + 1) : rs.child(max_len + 1);
        queue.push_back(mm);
      }
      if (ls.infinite() && rs.infinite()) {
        // Clause (1) forces the remaining virtual children to coincide;
        // probe one position if the spines somehow disagree.
        TermPtr lc = ls.child(max_len + 1);
        TermPtr rc = rs.child(max_len + 1);
        if (!alpha_eq(lc, rc)) {
          QueueEntry probe;
          probe.kind = QueueEntry::Kind::Compare;
          probe.path = e.path.extended({j, max_len + 1});
          probe.left = lc;
          probe.right = rc;
          queue.push_back(std::move(probe));
        }
      }
    }
  }

  SimSearchHit hit;
  if (unknown_seen) {
    hit.status = SimStatus::Unknown;
    hit.unknown_side = unknown_side;
    hit.witness = unknown_path;
  } else {
    hit.status = SimStatus::Similar;
  }
  return hit;
}

SimVerdict sim_bounded(const TermPtr& m, const TermPtr& n, uint32_t depth,
                       uint64_t fuel) {
  SimSearchHit hit = sim_search(m, n, depth, fuel);
  SimVerdict v;
  v.status = hit.status;
  v.witness = hit.witness;
  v.reason = hit.reason;
  v.unknown_side = hit.unknown_side;
  return v;
}

}  // namespace stackcalc
