#include <doctest.h>

#include <algorithm>

#include "stackcalc/certificate_io.hpp"
#include "stackcalc/constants.hpp"
#include "stackcalc/reduction.hpp"
#include "stackcalc/separator.hpp"
#include "stackcalc/strategies.hpp"
#include "stackcalc/surface.hpp"
#include "support/generators.hpp"

using namespace stackcalc;
using stackcalc::testing::Rng;

namespace {

TermPtr T(const char* s) { return parse_term(s); }

bool path_has(const Certificate& c, const std::string& label) {
  return std::any_of(c.case_path.begin(), c.case_path.end(),
                     [&](const std::string& s) {
                       return s.find(label) != std::string::npos;
                     });
}

Certificate expect_single(const char* a, const char* b, const char* label) {
  auto cert = separate_single(T(a), T(b));
  REQUIRE(cert.has_value());
  CHECK(cert->verified);
  CHECK(verify_certificate(*cert, T(a), T(b), 10000));
  CHECK(path_has(*cert, label));
  return *cert;
}

Certificate expect_general(const char* a, const char* b, const char* label) {
  auto cert = separate_general(T(a), T(b), 10000);
  REQUIRE(cert.has_value());
  CHECK(cert->verified);
  CHECK(verify_certificate(*cert, T(a), T(b), 10000));
  CHECK(path_has(*cert, label));
  return *cert;
}

}  // namespace

TEST_CASE("plugging captures deliberately") {
  // [.] @ a under bd a: the free a of the plugged term is captured.
  HeadContext ctx;
  ctx.frames.push_back(Frame::bind(VarName{"a", 0}));
  ctx.frames.push_back(Frame::apply(svar(VarName{"a", 0})));
  TermPtr plugged = plug(ctx, T("car(a)"));
  CHECK(alpha_eq(plugged, T("bd a. car(a) @ a")));
  CHECK(free_vars(plugged).empty());
}

TEST_CASE("original context shape") {
  HeadContext good;
  good.frames.push_back(Frame::bind(VarName{"a", 0}));
  good.frames.push_back(Frame::apply(nil()));
  CHECK(original_context(good));
  HeadContext bad;
  bad.frames.push_back(Frame::apply(nil()));
  CHECK_FALSE(original_context(bad));
}

TEST_CASE("permutators") {
  CHECK(alpha_eq(permutator(0), T("bd d. car(d)")));
  CHECK(alpha_eq(permutator(2), T("bd e1. bd e2. bd d. car(d) @ e1 @ e2")));

  // behavioural: P2 @ pi1 @ pi2 @ (N :: rho) ->> N @ pi1 @ pi2
  TermPtr applied = app(
      app(app(permutator(2), parse_stack("g")), parse_stack("d")),
      parse_stack("#T :: rho"));
  ReductOutcome r = reduce_normal(Expr(applied), RuleSet::sigma(), 200);
  ReductOutcome want =
      reduce_normal(Expr(T("#T @ g @ d")), RuleSet::sigma(), 200);
  REQUIRE(r.normal());
  REQUIRE(want.normal());
  CHECK(alpha_eq(r.expr, want.expr));
}

TEST_CASE("permutator stacks") {
  VarName e{"e", 0};
  CHECK(alpha_eq(perm_stack(e, 1, 0), parse_stack("e")));
  CHECK(alpha_eq(perm_stack(e, 1, 2),
                 parse_stack("#P1 :: #P1 :: e")));
  CHECK(alpha_eq(perm_stack(e, 0, 1), parse_stack("(bd d. car(d)) :: e")));
}

TEST_CASE("particular theorem case 1") {
  expect_single("bd a. car(b) @ a", "bd a. car(g) @ a", "single(1)");
}

TEST_CASE("particular theorem case 2") {
  expect_single("bd a. car(b) @ a", "bd a. car(cdr(b)) @ a", "single(2)");
  // mirrored orientation
  expect_single("bd a. car(cdr(b)) @ a", "bd a. car(b) @ a", "single(2)");
}

TEST_CASE("particular theorem case 3.1.1") {
  Certificate c = expect_single("bd a. car(b) @ g", "bd a. car(b) @ d",
                                "single(3.1.1)");
  CHECK(path_has(c, "single(3.2.2)"));
}

TEST_CASE("particular theorem case 3.1.2") {
  expect_single("bd a. car(b) @ b", "bd a. car(b) @ g", "single(3.1.2)");
}

TEST_CASE("particular theorem case 3.2.1") {
  Certificate c = expect_single("bd a. car(b) @ (#T :: g)",
                                "bd a. car(b) @ g", "single(3.2.1)");
  CHECK(path_has(c, "single(3.2.2)"));
}

TEST_CASE("particular theorem case 3.2.2") {
  expect_single("bd a. car(b) @ b", "bd a. car(b) @ (#T :: b)",
                "single(3.2.2)");
  // a pair with distinct-from-head tails routes through 3.2.1 first
  Certificate c = expect_single("bd a. car(b) @ g", "bd a. car(b) @ (#T :: g)",
                                "single(3.2.2)");
  CHECK(path_has(c, "single(3.2.1)"));
}

TEST_CASE("particular theorem rejects similar inputs") {
  CHECK_FALSE(separate_single(T("bd a. car(b) @ a"), T("bd a. car(b) @ a"))
                  .has_value());
  // nil-tailed stacks are similar to anything
  CHECK_FALSE(separate_single(T("bd a. car(b) @ (#T :: nil)"),
                              T("bd a. car(b) @ g"))
                  .has_value());
  CHECK_THROWS_AS(separate_single(T("car(nil)"), T("bd a. car(b) @ a")),
                  NotInShapeError);
}

TEST_CASE("general theorem case 1") {
  expect_general("bd a1. bd a2. car(b) @ a1 @ a2",
                 "bd a1. bd a2. car(g) @ a1 @ a2", "general(1)");
  // bound heads at different positions
  expect_general("bd a1. bd a2. car(a1) @ a1 @ a2",
                 "bd a1. bd a2. car(a2) @ a1 @ a2", "general(1)");
}

TEST_CASE("general theorem case 2") {
  expect_general("bd a. car(b) @ a @ a", "bd a. car(cdr(b)) @ a @ a",
                 "general(2)");
}

TEST_CASE("general theorem case 3") {
  expect_general("bd a. car(b) @ a @ a", "bd a. car(b) @ a", "general(3)");
  // opposite orientation
  expect_general("bd a. car(b) @ a", "bd a. car(b) @ a @ a", "general(3)");
}

TEST_CASE("general theorem case 4") {
  expect_general("bd a. car(b) @ (#T :: g)", "bd a. car(b) @ (#T :: d)",
                 "general(4)");
}

TEST_CASE("general theorem case 5") {
  expect_general("bd a1. car(b) @ a1", "bd a1. bd a2. car(b) @ a1 @ g",
                 "general(5)");
}

TEST_CASE("general theorem requires proper hnfs") {
  CHECK_THROWS_AS(
      separate_general(constant("Omega"), constant("T"), 200),
      NoProperHnfError);
}

TEST_CASE("bohm out base case") {
  auto ctx = bohm_out(constant("T"), 0, {}, 0, 0, 100);
  REQUIRE(ctx.has_value());
  CHECK(ctx->frames.empty());
}

TEST_CASE("bohm out extracts a closed node") {
  // m = bd a. car(b) @ (#T :: #F :: a), sigma = (1,2): the node is F and is
  // closed, so the permutator substitutions vanish. Routing still needs
  // p >= weight+1 along the prefix, hence p = 1 here.
  TermPtr m = T("bd a. car(b) @ (#T :: #F :: a)");
  NodePath sigma{{1, 2}};
  auto ctx = bohm_out(m, 1, sigma, 1, 1, 1000);
  REQUIRE(ctx.has_value());
  ReductOutcome r = reduce_normal(Expr(plug(*ctx, m)), RuleSet::sigma(), 2000);
  REQUIRE(r.normal());
  CHECK(alpha_eq(r.expr, Expr(constant("F"))));
}

TEST_CASE("bohm out rejects bad input") {
  TermPtr m = T("bd a. car(b) @ (#T :: a)");
  CHECK_THROWS_AS(bohm_out(m, 1, {{2, 1}}, 3, 3, 200), PathNotInDomainError);
  CHECK_THROWS_AS(bohm_out(m, 0, {{1, 1}}, 3, 3, 200), PathNotInDomainError);
  CHECK_THROWS_AS(bohm_out(m, 1, {{1, 1}}, 3, 0, 200), BoundsTooSmallError);
  // p = 0 cannot route any head variable through a permutator stack: the
  // substituted head car(eps) would be stuck, so the construction demands
  // p >= weight+1 even when the target node is closed.
  TermPtr m2 = T("bd a. car(b) @ (#T :: #F :: a)");
  CHECK_THROWS_AS(bohm_out(m2, 1, {{1, 2}}, 1, 0, 200), BoundsTooSmallError);
}

TEST_CASE("bohm out conformance sampled") {
  Rng rng(71);
  int seen = 0;
  while (seen < 30) {
    TermPtr m = stackcalc::testing::random_normal_term(rng, 2);
    NodePath sigma{{1, 1}};
    NodeResult node = node_at(m, sigma, 300);
    if (!node.defined()) continue;
    ++seen;
    auto detail = bohm_out_detail(m, sigma, 4, 4, 1000, false);
    REQUIRE(detail.has_value());
    TermPtr plugged = plug(detail->context, m);
    CHECK(joinable(Expr(plugged), Expr(detail->target), RuleSet::sigma(),
                   4000) == Tri::Yes);
    HeadResult ha = head_normalize(plugged, 2000);
    HeadResult hb = head_normalize(node.term, 2000);
    if (ha.status != StrategyStatus::Diverged &&
        hb.status != StrategyStatus::Diverged) {
      CHECK(ha.proper() == hb.proper());
    }
  }
}

TEST_CASE("bohm out follows virtual addresses") {
  Rng rng(555);
  int tried = 0;
  while (tried < 40) {
    TermPtr m = stackcalc::testing::random_normal_term(rng, 2);
    NodePath sigma{{1 + static_cast<uint32_t>(rng() % 4),
                    1 + static_cast<uint32_t>(rng() % 3)},
                   {1 + static_cast<uint32_t>(rng() % 3),
                    1 + static_cast<uint32_t>(rng() % 3)}};
    if (!virtual_node(m, sigma, 500).defined()) continue;
    ++tried;
    auto det = bohm_out_detail(m, sigma, 8, 8, 2000, true);
    REQUIRE(det.has_value());
    CHECK(joinable(Expr(plug(det->context, m)), Expr(det->target),
                   RuleSet::sigma(), 8000) == Tri::Yes);
  }
}

TEST_CASE("separate finds the surface-equal pair") {
  TermPtr m = T("bd g. car(g) @ (#T :: g)");
  TermPtr n = T("bd g. car(g) @ (#F :: g)");
  SeparateResult r = separate(m, n, 2, 10000);
  REQUIRE(r.separated());
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->verified);
  CHECK(r.witness == NodePath{{1, 1}});
  CHECK(convertible(Expr(plug(r.certificate->context, m)),
                    Expr(constant("T")), RuleSet::sigma(), 10000) == Tri::Yes);
  CHECK(convertible(Expr(plug(r.certificate->context, n)),
                    Expr(constant("F")), RuleSet::sigma(), 10000) == Tri::Yes);
}

TEST_CASE("separate handles the root pair T F") {
  SeparateResult r = separate(constant("T"), constant("F"), 0, 100);
  REQUIRE(r.separated());
  CHECK(r.certificate->verified);
  CHECK(r.witness.empty());
}

TEST_CASE("separate reports unknown for diverging pairs") {
  SeparateResult r = separate(constant("Omega"), constant("Tinf"), 2, 300);
  CHECK(r.status == SeparateStatus::Unknown);
}

TEST_CASE("separate emits a distinguishing certificate on hnf-status splits") {
  // car(g) vs car(nil) disagree only in properness of the root hnf.
  SeparateResult r = separate(T("car(g)"), T("car(nil)"), 1, 500);
  CHECK(r.status == SeparateStatus::Unknown);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->kind == Certificate::Kind::Distinguishing);
  CHECK(r.certificate->verified);

  // nil-tailed vs var-tailed stacks: the domain mismatch yields one too.
  SeparateResult d =
      separate(T("bd a. car(b) @ g"), T("bd a. car(b) @ nil"), 2, 500);
  CHECK(d.status == SeparateStatus::Unknown);
  REQUIRE(d.certificate.has_value());
  CHECK(d.certificate->kind == Certificate::Kind::Distinguishing);
  CHECK(d.certificate->verified);
}

TEST_CASE("verify certificate basics") {
  Certificate ident;
  ident.left_target = constant("T");
  ident.right_target = constant("F");
  CHECK(verify_certificate(ident, constant("T"), constant("F"), 100));
  CHECK_FALSE(verify_certificate(ident, constant("T"), constant("T"), 100));
}

TEST_CASE("separability implies an operational difference") {
  // From a verified certificate, bd e. C[.] @ (Omega :: I :: e) flips the
  // hnf status of the two sides.
  TermPtr m = T("bd g. car(g) @ (#T :: g)");
  TermPtr n = T("bd g. car(g) @ (#F :: g)");
  SeparateResult r = separate(m, n, 2, 10000);
  REQUIRE(r.separated());
  FreshSession session;
  session.reserve_all(plug(r.certificate->context, m));
  session.reserve_all(plug(r.certificate->context, n));
  VarName e = session.fresh("e");
  HeadContext flip;
  flip.frames.push_back(Frame::bind(e));
  flip.frames.push_back(Frame::apply(
      push(constant("Omega"), push(constant("I"), svar(e)))));
  HeadContext full = compose(flip, r.certificate->context);
  HeadResult hm = head_normalize(plug(full, m), 10000);
  HeadResult hn = head_normalize(plug(full, n), 10000);
  CHECK(hm.status == StrategyStatus::Diverged);
  CHECK(hn.status == StrategyStatus::FoundProper);
}

TEST_CASE("certificate json round trip") {
  TermPtr m = T("bd g. car(g) @ (#T :: g)");
  TermPtr n = T("bd g. car(g) @ (#F :: g)");
  SeparateResult r = separate(m, n, 2, 10000);
  REQUIRE(r.separated());
  std::string text = certificate_to_json(*r.certificate);
  Certificate back = certificate_from_json(text);
  CHECK(back.case_path == r.certificate->case_path);
  CHECK(verify_certificate(back, m, n, 10000));
  CHECK(certificate_to_json(back) == text);
}

TEST_CASE("dissimilarity with proper hnfs implies separability at scale") {
  Rng rng(73);
  int seen = 0;
  while (seen < 40) {
    TermPtr a = stackcalc::testing::random_normal_term(rng, 2);
    TermPtr b = stackcalc::testing::random_normal_term(rng, 2);
    SimVerdict v = term_similar(a, b, 500);
    if (!v.dissimilar() || v.reason == "improper-vs-proper") continue;
    ++seen;
    auto cert = separate_general(a, b, 10000);
    REQUIRE(cert.has_value());
    CHECK(cert->verified);
  }
}
