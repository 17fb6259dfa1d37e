#pragma once

#include <vector>

#include "stackcalc/syntax.hpp"

namespace stackcalc {

struct Frame {
  enum class Kind { Bind, Apply };
  Kind kind;
  VarName var{};     // Bind
  StackPtr stack{};  // Apply

  static Frame bind(VarName v) {
    return Frame{Kind::Bind, std::move(v), nullptr};
  }
  static Frame apply(StackPtr s) { return Frame{Kind::Apply, {}, std::move(s)}; }
};

// A one-hole head context; frames are listed outside-in. Plugging is a
// literal hole filling with no capture avoidance: binders in the context
// deliberately capture free variables of the plugged term.
struct HeadContext {
  std::vector<Frame> frames;
};

TermPtr plug(const HeadContext& c, const TermPtr& m);

// outer[inner[.]]
HeadContext compose(const HeadContext& outer, const HeadContext& inner);

// Original-dialect contexts alternate bd a. C[.] @ pi.
bool original_context(const HeadContext& c);

}  // namespace stackcalc
