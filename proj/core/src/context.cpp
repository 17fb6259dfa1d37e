#include "stackcalc/context.hpp"

namespace stackcalc {

TermPtr plug(const HeadContext& c, const TermPtr& m) {
  TermPtr out = m;
  for (auto it = c.frames.rbegin(); it != c.frames.rend(); ++it) {
    if (it->kind == Frame::Kind::Bind) {
      out = abs(it->var, out);
    } else {
      out = app(out, it->stack);
    }
  }
  return out;
}

HeadContext compose(const HeadContext& outer, const HeadContext& inner) {
  HeadContext out = outer;
  out.frames.insert(out.frames.end(), inner.frames.begin(),
                    inner.frames.end());
  return out;
}

bool original_context(const HeadContext& c) {
  if (c.frames.size() % 2 != 0) return false;
  for (size_t i = 0; i < c.frames.size(); i += 2) {
    if (c.frames[i].kind != Frame::Kind::Bind ||
        c.frames[i + 1].kind != Frame::Kind::Apply) {
      return false;
    }
  }
  return true;
}

}  // namespace stackcalc
