#include "commands.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "stackcalc/bohm.hpp"
#include "stackcalc/certificate_io.hpp"
#include "stackcalc/constants.hpp"
#include "stackcalc/reduction.hpp"
#include "stackcalc/separator.hpp"
#include "stackcalc/strategies.hpp"
#include "stackcalc/surface.hpp"

namespace stackcalc::cli {

namespace {

struct Options {
  std::string command;
  std::vector<std::string> positional;
  uint64_t fuel = 10000;
  std::string format = "text";
  std::string rules = "sigma";
  uint32_t depth = 2;
  bool trace = false;
  std::string dialect;
  std::string out_path;
};

struct UsageError : Error {
  using Error::Error;
};

Options parse_args(const std::vector<std::string>& args) {
  Options opt;
  if (args.empty()) throw UsageError("missing subcommand");
  opt.command = args[0];
  for (size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto value = [&]() -> const std::string& {
      if (i + 1 >= args.size()) throw UsageError("missing value for " + a);
      return args[++i];
    };
    if (a == "--fuel") {
      opt.fuel = std::stoull(value());
      if (opt.fuel == 0) throw UsageError("--fuel must be positive");
    } else if (a == "--format") {
      opt.format = value();
      if (opt.format != "text" && opt.format != "json") {
        throw UsageError("--format must be text or json");
      }
    } else if (a == "--rules") {
      opt.rules = value();
      if (opt.rules != "sigma" && opt.rules != "sigmaeta") {
        throw UsageError("--rules must be sigma or sigmaeta");
      }
    } else if (a == "--depth") {
      opt.depth = static_cast<uint32_t>(std::stoul(value()));
    } else if (a == "--trace") {
      opt.trace = true;
    } else if (a == "--dialect") {
      opt.dialect = value();
    } else if (a == "--out") {
      opt.out_path = value();
    } else if (!a.empty() && a[0] == '-') {
      throw UsageError("unknown flag " + a);
    } else {
      opt.positional.push_back(a);
    }
  }
  return opt;
}

RuleSet rules_of(const Options& opt) {
  return opt.rules == "sigmaeta" ? RuleSet::sigma_eta() : RuleSet::sigma();
}

void emit_json(std::ostream& out, const nlohmann::json& j) {
  out << j.dump(2) << "\n";
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "unknown";
  }
}

// Macro-step display reduction: contract the leftmost enabled non-car/cdr
// redex of the canonical form, then recanonicalize. Detects self-loops by
// alpha-key.
int cmd_reduce(const Options& opt, std::ostream& out) {
  Expr cur = canonical_form(parse_expr(opt.positional.at(0)));
  RuleSet step_rules = rules_of(opt);
  step_rules.car = false;
  step_rules.cdr = false;
  std::unordered_set<std::string> seen{alpha_key(cur)};
  std::vector<std::string> lines{print(cur)};
  uint64_t steps = 0;
  bool looping = false;
  bool exhausted = false;
  while (true) {
    auto next = leftmost_step(cur, step_rules);
    if (!next) break;
    cur = canonical_form(*next);
    ++steps;
    lines.push_back(print(cur));
    if (!seen.insert(alpha_key(cur)).second) {
      looping = true;
      break;
    }
    if (steps >= opt.fuel) {
      exhausted = leftmost_step(cur, step_rules).has_value();
      break;
    }
  }
  if (opt.format == "json") {
    nlohmann::json j;
    j["verdict"] = looping ? "self-loop" : exhausted ? "fuel-exhausted" : "normal";
    j["steps"] = steps;
    j["fuelUsed"] = steps;
    j["result"] = print(cur);
    if (opt.trace) j["trace"] = lines;
    emit_json(out, j);
  } else {
    if (opt.trace) {
      for (const auto& l : lines) out << l << "\n";
    } else {
      out << print(cur) << "\n";
    }
    if (looping) out << "non-normalizing: self-loop after " << steps << " step(s)\n";
    if (exhausted) out << "fuel exhausted after " << steps << " step(s)\n";
  }
  return (looping || exhausted) ? kUnknown : kOk;
}

int cmd_canon(const Options& opt, std::ostream& out) {
  Expr e = canonical_form(parse_expr(opt.positional.at(0)));
  if (opt.format == "json") {
    emit_json(out, {{"result", print(e)}});
  } else {
    out << print(e) << "\n";
  }
  return kOk;
}

int cmd_hnf(const Options& opt, std::ostream& out) {
  TermPtr t = parse_term(opt.positional.at(0));
  HeadResult r = head_normalize(t, opt.fuel);
  std::string verdict = r.status == StrategyStatus::FoundProper ? "proper"
                        : r.status == StrategyStatus::Improper  ? "improper"
                                                                : "diverged";
  if (opt.format == "json") {
    nlohmann::json j;
    j["verdict"] = verdict;
    j["steps"] = r.steps;
    j["fuelUsed"] = r.steps;
    if (r.status != StrategyStatus::Diverged) j["result"] = print(r.term);
    emit_json(out, j);
  } else {
    if (r.status == StrategyStatus::Diverged) {
      out << "diverged after " << r.steps << " step(s)\n";
    } else {
      out << print(r.term) << "\n" << verdict << " hnf, " << r.steps
          << " step(s)\n";
    }
  }
  return r.status == StrategyStatus::Diverged ? kUnknown : kOk;
}

int cmd_onf(const Options& opt, std::ostream& out) {
  if (opt.dialect != "original") {
    throw UsageError("onf requires --dialect original");
  }
  TermPtr t = parse_term(opt.positional.at(0));
  OuterResult r = outer_normalize(t, opt.fuel);
  std::string verdict = r.status == StrategyStatus::FoundProper ? "proper"
                        : r.status == StrategyStatus::Improper  ? "improper"
                                                                : "diverged";
  if (opt.format == "json") {
    nlohmann::json j;
    j["verdict"] = verdict;
    j["steps"] = r.steps;
    j["fuelUsed"] = r.steps;
    if (r.status != StrategyStatus::Diverged) j["result"] = print(r.term);
    emit_json(out, j);
  } else {
    if (r.status == StrategyStatus::Diverged) {
      out << "diverged after " << r.steps << " step(s)\n";
    } else {
      out << print(r.term) << "\n" << verdict << " onf, " << r.steps
          << " step(s)\n";
    }
  }
  return r.status == StrategyStatus::Diverged ? kUnknown : kOk;
}

int cmd_tree(const Options& opt, std::ostream& out) {
  TermPtr t = parse_term(opt.positional.at(0));
  struct Row {
    NodePath path;
    std::string text;
  };
  std::vector<Row> rows;
  bool unknown = false;
  struct Entry {
    NodePath path;
    TermPtr node;
  };
  std::vector<Entry> level{{NodePath{}, t}};
  while (!level.empty()) {
    std::vector<Entry> next;
    for (const auto& e : level) {
      HeadResult h = head_normalize(e.node, opt.fuel);
      if (h.status == StrategyStatus::Diverged) {
        rows.push_back({e.path, "<diverged>"});
        unknown = true;
        continue;
      }
      rows.push_back({e.path, print(h.term)});
      if (h.status == StrategyStatus::Improper) continue;
      if (e.path.length() >= opt.depth) continue;
      const HnfView& v = *h.view;
      for (uint32_t j = 1; j <= v.args.size(); ++j) {
        SpineView spine = spine_of(v.args[j - 1]);
        for (uint32_t jp = 1; jp <= spine.terms.size(); ++jp) {
          next.push_back({e.path.extended({j, jp}), spine.terms[jp - 1]});
        }
      }
    }
    level = std::move(next);
  }
  if (opt.format == "json") {
    nlohmann::json j;
    j["verdict"] = unknown ? "partial" : "ok";
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& r : rows) {
      nodes.push_back({{"path", r.path.str()}, {"node", r.text}});
    }
    j["nodes"] = std::move(nodes);
    emit_json(out, j);
  } else {
    for (const auto& r : rows) out << r.path.str() << ": " << r.text << "\n";
  }
  return unknown ? kUnknown : kOk;
}

int cmd_similar(const Options& opt, std::ostream& out) {
  TermPtr a = parse_term(opt.positional.at(0));
  TermPtr b = parse_term(opt.positional.at(1));
  SimVerdict v = sim_bounded(a, b, opt.depth, opt.fuel);
  std::string verdict = v.status == SimStatus::Similar     ? "similar"
                        : v.status == SimStatus::Dissimilar ? "dissimilar"
                                                            : "unknown";
  if (opt.format == "json") {
    nlohmann::json j;
    j["verdict"] = verdict;
    if (v.dissimilar()) {
      j["witnessPath"] = v.witness.str();
      j["reason"] = v.reason;
    }
    j["steps"] = 0;
    j["fuelUsed"] = opt.fuel;
    emit_json(out, j);
  } else {
    out << verdict;
    if (v.dissimilar()) out << " at " << v.witness.str() << " (" << v.reason << ")";
    out << "\n";
  }
  return v.status == SimStatus::Similar     ? kOk
         : v.status == SimStatus::Dissimilar ? kNo
                                             : kUnknown;
}

int cmd_separate(const Options& opt, std::ostream& out) {
  TermPtr a = parse_term(opt.positional.at(0));
  TermPtr b = parse_term(opt.positional.at(1));
  SeparateResult r = separate(a, b, opt.depth, opt.fuel);
  std::string verdict = r.separated()                            ? "separated"
                        : r.status == SeparateStatus::NoneFound ? "none-found"
                                                                : "unknown";
  if (r.certificate && !opt.out_path.empty()) {
    save_certificate(*r.certificate, opt.out_path);
  }
  if (opt.format == "json") {
    nlohmann::json j;
    j["verdict"] = verdict;
    if (!r.witness.empty() || r.separated()) j["witnessPath"] = r.witness.str();
    if (!r.note.empty()) j["note"] = r.note;
    if (r.certificate) {
      j["caseLog"] = r.certificate->case_path;
      j["verified"] = r.certificate->verified;
    }
    j["steps"] = 0;
    j["fuelUsed"] = opt.fuel;
    emit_json(out, j);
  } else {
    out << verdict;
    if (r.separated()) out << " at " << r.witness.str();
    if (!r.note.empty()) out << " (" << r.note << ")";
    out << "\n";
  }
  return r.separated()                            ? kOk
         : r.status == SeparateStatus::NoneFound ? kNo
                                                  : kUnknown;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  Certificate cert = load_certificate(opt.positional.at(0));
  TermPtr a = parse_term(opt.positional.at(1));
  TermPtr b = parse_term(opt.positional.at(2));
  bool ok = verify_certificate(cert, a, b, opt.fuel);
  if (opt.format == "json") {
    emit_json(out, {{"verdict", ok ? "verified" : "failed"},
                    {"steps", 0},
                    {"fuelUsed", opt.fuel}});
  } else {
    out << (ok ? "verified" : "verification failed") << "\n";
  }
  return ok ? kOk : kNo;
}

int cmd_eq(const Options& opt, std::ostream& out) {
  Expr a = parse_expr(opt.positional.at(0));
  Expr b = parse_expr(opt.positional.at(1));
  Tri t = convertible(a, b, rules_of(opt), opt.fuel);
  if (opt.format == "json") {
    emit_json(out,
              {{"verdict", tri_name(t)}, {"steps", 0}, {"fuelUsed", opt.fuel}});
  } else {
    out << tri_name(t) << "\n";
  }
  return t == Tri::Yes ? kOk : t == Tri::No ? kNo : kUnknown;
}

void check_arity(const Options& opt, size_t want) {
  if (opt.positional.size() != want) {
    throw UsageError(opt.command + " expects " + std::to_string(want) +
                     " argument(s)");
  }
}

const char kUsageText[] =
    "usage: stackc <command> [args] [flags]\n"
    "commands:\n"
    "  canon EXPR                     car/cdr-normal form\n"
    "  reduce EXPR [--trace]          reduce to rule-normal form\n"
    "  hnf TERM                       head-normalize\n"
    "  onf TERM --dialect original    outer-normalize\n"
    "  tree TERM --depth D            Bohm-tree nodes up to depth D\n"
    "  similar A B --depth D          bounded similarity\n"
    "  separate A B --depth D [--out cert.json]\n"
    "  verify cert.json A B           check a certificate by reduction\n"
    "  eq A B                         convertibility\n"
    "flags: --fuel N (default 10000), --format text|json,\n"
    "       --rules sigma|sigmaeta, --depth D, --dialect original, --out F\n";

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  Options opt;
  try {
    opt = parse_args(args);
    if (opt.command == "help" || opt.command == "--help") {
      out << kUsageText;
      return kOk;
    }
    if (opt.command == "canon") {
      check_arity(opt, 1);
      return cmd_canon(opt, out);
    }
    if (opt.command == "reduce") {
      check_arity(opt, 1);
      return cmd_reduce(opt, out);
    }
    if (opt.command == "hnf") {
      check_arity(opt, 1);
      return cmd_hnf(opt, out);
    }
    if (opt.command == "onf") {
      check_arity(opt, 1);
      return cmd_onf(opt, out);
    }
    if (opt.command == "tree") {
      check_arity(opt, 1);
      return cmd_tree(opt, out);
    }
    if (opt.command == "similar") {
      check_arity(opt, 2);
      return cmd_similar(opt, out);
    }
    if (opt.command == "separate") {
      check_arity(opt, 2);
      return cmd_separate(opt, out);
    }
    if (opt.command == "verify") {
      check_arity(opt, 3);
      return cmd_verify(opt, out);
    }
    if (opt.command == "eq") {
      check_arity(opt, 2);
      return cmd_eq(opt, out);
    }
    throw UsageError("unknown command " + opt.command);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << kUsageText;
    return kUsage;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace stackcalc::cli
