#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stackcalc/strategies.hpp"
#include "stackcalc/syntax.hpp"

namespace stackcalc {

// A Bohm-tree node address: a sequence of pairs (j, j') of positive
// naturals. (j, j') selects the j'-th term of the canonical form of the
// j-th argument stack of the node's hnf.
struct NodePath {
  std::vector<std::pair<uint32_t, uint32_t>> pairs;

  NodePath() = default;
  NodePath(std::initializer_list<std::pair<uint32_t, uint32_t>> ps)
      : pairs(ps) {}

  size_t length() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  NodePath prefix(size_t len) const;
  NodePath extended(std::pair<uint32_t, uint32_t> p) const;
  std::string str() const;  // "(1,2)(2,1)"; "eps" for the empty path

  friend bool operator==(const NodePath&, const NodePath&) = default;
};

enum class NodeStatus { Defined, Undefined, Unknown };

struct NodeResult {
  NodeStatus status;
  TermPtr term;  // set when Defined

  bool defined() const { return status == NodeStatus::Defined; }
};

// M(sigma): iterated hnf + child extraction. Undefined when an index is out
// of range or an hnf on the way is improper; Unknown when head reduction
// exhausts fuel.
NodeResult node_at(const TermPtr& m, const NodePath& sigma, uint64_t fuel);

struct TreeMetrics {
  uint32_t bounded_breadth = 0;
  uint32_t bounded_weight = 0;
  uint32_t depth_bound = 0;
  uint64_t fuel_used = 0;
  bool exact = true;  // false when some node at depth <= bound hit the fuel
};

// Max breadth/weight over the nodes of depth <= depth. Undefined and
// improper nodes contribute 0.
TreeMetrics bounded_metrics(const TermPtr& m, uint32_t depth, uint64_t fuel);

// Path expansion <M>sigma: materializes the eta-expansions needed to make
// sigma a real node address. Undefined when the hnf is missing/improper or
// the clauses do not apply (sigma must leave the real domain immediately).
NodeResult path_expand(const TermPtr& m, const NodePath& sigma, uint64_t fuel);

// M_sigma: the virtual-node map. Follows the real domain as far as it goes,
// then switches to the path expansion of the last real node.
NodeResult virtual_node(const TermPtr& m, const NodePath& sigma, uint64_t fuel);

enum class SimStatus { Similar, Dissimilar, Unknown };

// Which side a fuel-exhausted answer came from.
enum class UnknownSide { None, Left, Right, Both };

struct SimVerdict {
  SimStatus status;
  NodePath witness;    // minimal disagreement path (Dissimilar only)
  std::string reason;  // which clause failed
  UnknownSide unknown_side = UnknownSide::None;

  bool similar() const { return status == SimStatus::Similar; }
  bool dissimilar() const { return status == SimStatus::Dissimilar; }
};

// Stack similarity, decided on canonical spines: similar iff either spine
// is nil-terminated, or both tails are the same variable and k - m agrees.
SimVerdict stack_similar(const StackPtr& pi, const StackPtr& varpi);

// Term similarity: the surface comparison of hnfs (same head, same index,
// k - m, argwise stack similarity, eta-matched surplus).
SimVerdict term_similar(const TermPtr& m, const TermPtr& n, uint64_t fuel);

// Bounded approximation of the infinite similarity: checks virtual-domain
// agreement and node similarity at every address of length <= depth.
// Dissimilar carries the minimal witness (by length, then lexicographic).
SimVerdict sim_bounded(const TermPtr& m, const TermPtr& n, uint32_t depth,
                       uint64_t fuel);

// Detail record for the minimal-disagreement search, shared with the
// separator: the materialized node pair at the witness (binders renamed to
// a common sequence along the path) plus their resolution status.
struct SimSearchHit {
  SimStatus status = SimStatus::Similar;
  NodePath witness;
  std::string reason;
  UnknownSide unknown_side = UnknownSide::None;
  bool left_defined = false;
  bool right_defined = false;
  TermPtr left_node;   // set when defined
  TermPtr right_node;  // set when defined
  bool left_proper = false;   // hnf status at the witness, when resolved
  bool right_proper = false;
  bool left_resolved = false;
  bool right_resolved = false;
};

SimSearchHit sim_search(const TermPtr& m, const TermPtr& n, uint32_t depth,
                        uint64_t fuel);

}  // namespace stackcalc
