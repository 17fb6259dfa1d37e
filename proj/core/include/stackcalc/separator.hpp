#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stackcalc/bohm.hpp"
#include "stackcalc/certificate.hpp"
#include "stackcalc/context.hpp"
#include "stackcalc/syntax.hpp"

namespace stackcalc {

struct NotInShapeError : Error {
  using Error::Error;
};
struct NoProperHnfError : Error {
  using Error::Error;
};
struct PathNotInDomainError : Error {
  using Error::Error;
};
struct BoundsTooSmallError : Error {
  using Error::Error;
};

// spt{q} = bd e_1 ... e_q d. car(d) @ e_1 @ ... @ e_q
TermPtr permutator(uint32_t q);

// sps{eps}{q}{p} = spt{q} :: ... :: spt{q} :: eps   (p copies)
StackPtr perm_stack(const VarName& eps, uint32_t q, uint32_t p);

// The particular separability theorem: both inputs must have the shape
// bd a. car(cdr^n(beta)) @ pi (single binder, proper head, single stack).
// Returns a certificate when the terms are dissimilar, nullopt when similar.
// Throws NotInShapeError on malformed input.
std::optional<Certificate> separate_single(const TermPtr& m, const TermPtr& n);

// The general separability theorem for terms with proper hnfs. Throws
// NoProperHnfError when a side fails to reach a proper hnf within fuel.
std::optional<Certificate> separate_general(const TermPtr& m, const TermPtr& n,
                                            uint64_t fuel);

// The Bohm-out construction: a context C with
//   plug(C, m) ->>  M(sigma)[sps{eps_i}{q}{p} / beta_i]
// where beta_i are the head variables along the path. Throws
// PathNotInDomainError when sigma is not in the (bounded) real domain and
// BoundsTooSmallError when q or p cannot route the path.
std::optional<HeadContext> bohm_out(const TermPtr& m, uint32_t n_bound,
                                    const NodePath& sigma, uint32_t q,
                                    uint32_t p, uint64_t fuel);

struct BohmOutDetail {
  HeadContext context;
  // beta_i -> eps_i in application order.
  std::vector<std::pair<VarName, VarName>> substitutions;
  TermPtr target;  // the reached node with the substitutions applied
  uint32_t q = 0;
  uint32_t p = 0;
};

// The same construction, optionally following virtual (eta-expanded)
// addresses; returns nullopt with no diagnostics instead of throwing.
std::optional<BohmOutDetail> bohm_out_detail(const TermPtr& m,
                                             const NodePath& sigma, uint32_t q,
                                             uint32_t p, uint64_t fuel,
                                             bool allow_virtual);

enum class SeparateStatus { Separated, NoneFound, Unknown };

struct SeparateResult {
  SeparateStatus status;
  std::optional<Certificate> certificate;  // Separated or Distinguishing
  NodePath witness;
  std::string note;

  bool separated() const { return status == SeparateStatus::Separated; }
};

// End-to-end separation: minimal dissimilar virtual node within depth,
// Bohm-out to it, then the general theorem on the extracted pair. Every
// Separated result is verified before being returned. When the minimal
// disagreement has a proper hnf on exactly one side, a distinguishing
// (hnf-status) certificate is attached to an Unknown result instead.
SeparateResult separate(const TermPtr& m, const TermPtr& n, uint32_t depth,
                        uint64_t fuel);

}  // namespace stackcalc
