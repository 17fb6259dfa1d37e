#include "stackcalc/certificate.hpp"

#include "stackcalc/reduction.hpp"
#include "stackcalc/strategies.hpp"

namespace stackcalc {

bool verify_certificate(const Certificate& cert, const TermPtr& m,
                        const TermPtr& n, uint64_t fuel) {
  TermPtr pm = plug(cert.context, m);
  TermPtr pn = plug(cert.context, n);
  if (cert.kind == Certificate::Kind::Separation) {
    return convertible(Expr(pm), Expr(cert.left_target), RuleSet::sigma(),
                       fuel) == Tri::Yes &&
           convertible(Expr(pn), Expr(cert.right_target), RuleSet::sigma(),
                       fuel) == Tri::Yes;
  }
  HeadResult hl = head_normalize(pm, fuel);
  HeadResult hr = head_normalize(pn, fuel);
  return hl.proper() != hr.proper();
}

}  // namespace stackcalc
