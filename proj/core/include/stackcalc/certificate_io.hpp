#pragma once

#include <string>

#include "stackcalc/certificate.hpp"

namespace stackcalc {

// Certificate wire format (version 1):
//   {"version":1,
//    "context":[{"bind":"e"} | {"apply":"<stack>"} ...],   outside-in
//    "caseLog":["..."],
//    "fuel":N,
//    "targets":{"left":"#T","right":"#F"}}
// Distinguishing certificates additionally carry "kind":"distinguishing"
// and descriptive target strings.
std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

void save_certificate(const Certificate& cert, const std::string& path);
Certificate load_certificate(const std::string& path);

}  // namespace stackcalc
