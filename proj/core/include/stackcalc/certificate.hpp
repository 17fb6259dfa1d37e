#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stackcalc/context.hpp"
#include "stackcalc/syntax.hpp"

namespace stackcalc {

struct Certificate {
  enum class Kind { Separation, Distinguishing };
  Kind kind = Kind::Separation;
  HeadContext context;
  TermPtr left_target;   // T for separation certificates
  TermPtr right_target;  // F for separation certificates
  uint64_t fuel_used = 0;
  std::vector<std::string> case_path;
  bool verified = false;
};

// Independent certificate check. Separation: plug both terms and decide
// convertibility with the targets. Distinguishing: the proper-hnf statuses
// must differ. Uses only plugging, the reduction engine and the strategies
// module; none of the separator's construction machinery.
bool verify_certificate(const Certificate& cert, const TermPtr& m,
                        const TermPtr& n, uint64_t fuel);

}  // namespace stackcalc
