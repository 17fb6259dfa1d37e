#include "stackcalc/certificate_io.hpp"

#include <fstream>

#include <json.hpp>

#include "stackcalc/constants.hpp"
#include "stackcalc/surface.hpp"

namespace stackcalc {

namespace {

std::string target_text(const TermPtr& t) {
  if (alpha_eq(t, constant("T"))) return "#T";
  if (alpha_eq(t, constant("F"))) return "#F";
  return print(t);
}

TermPtr target_term(const std::string& text) { return parse_term(text); }

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["version"] = 1;
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& f : cert.context.frames) {
    if (f.kind == Frame::Kind::Bind) {
      frames.push_back({{"bind", f.var.str()}});
    } else {
      frames.push_back({{"apply", print(f.stack)}});
    }
  }
  j["context"] = std::move(frames);
  j["caseLog"] = cert.case_path;
  j["fuel"] = cert.fuel_used;
  if (cert.kind == Certificate::Kind::Distinguishing) {
    j["kind"] = "distinguishing";
    j["targets"] = {{"left", "proper-hnf"}, {"right", "no-proper-hnf"}};
  } else {
    j["targets"] = {{"left", target_text(cert.left_target)},
                    {"right", target_text(cert.right_target)}};
  }
  return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("version") || j["version"].get<int>() != 1) {
    throw Error("unsupported certificate version");
  }
  Certificate cert;
  for (const auto& f : j.at("context")) {
    if (f.contains("bind")) {
      cert.context.frames.push_back(
          Frame::bind(VarName::from_ident(f["bind"].get<std::string>())));
    } else if (f.contains("apply")) {
      cert.context.frames.push_back(
          Frame::apply(parse_stack(f["apply"].get<std::string>())));
    } else {
      throw Error("certificate frame must be bind or apply");
    }
  }
  if (j.contains("caseLog")) {
    cert.case_path = j["caseLog"].get<std::vector<std::string>>();
  }
  if (j.contains("fuel")) cert.fuel_used = j["fuel"].get<uint64_t>();
  if (j.contains("kind") && j["kind"].get<std::string>() == "distinguishing") {
    cert.kind = Certificate::Kind::Distinguishing;
    cert.left_target = constant("T");
    cert.right_target = constant("F");
  } else {
    cert.left_target = target_term(j.at("targets").at("left").get<std::string>());
    cert.right_target =
        target_term(j.at("targets").at("right").get<std::string>());
  }
  return cert;
}

void save_certificate(const Certificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << certificate_to_json(cert) << "\n";
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return certificate_from_json(text);
}

}  // namespace stackcalc
