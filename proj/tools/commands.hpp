#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stackcalc::cli {

// Exit codes: 0 success, 1 negative answer (not convertible, dissimilar,
// not separated, verification failed), 2 unknown / fuel exhausted,
// 3 usage or parse error.
constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 3;

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace stackcalc::cli
