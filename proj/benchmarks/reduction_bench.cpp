#include <benchmark/benchmark.h>

#include "stackcalc/constants.hpp"
#include "stackcalc/reduction.hpp"
#include "stackcalc/separator.hpp"
#include "stackcalc/strategies.hpp"
#include "stackcalc/surface.hpp"

using namespace stackcalc;

namespace {

TermPtr church_tower(uint32_t n) {
  // bd g. I @ (I :: ( ... :: g)) nests n identity applications.
  TermPtr t = constant("I");
  StackPtr s = svar(VarName{"g", 0});
  for (uint32_t i = 0; i < n; ++i) s = push(constant("I"), s);
  return abs(VarName{"g", 0}, app(t, s));
}

void BM_reduce_normal(benchmark::State& state) {
  TermPtr t = church_tower(static_cast<uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reduce_normal(Expr(t), RuleSet::sigma(), 100000));
  }
}
BENCHMARK(BM_reduce_normal)->Arg(4)->Arg(16)->Arg(64);

void BM_head_normalize(benchmark::State& state) {
  TermPtr t = parse_term("bd d. #Y @ (#T :: d)");
  uint64_t fuel = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(head_normalize(t, fuel));
  }
}
BENCHMARK(BM_head_normalize)->Arg(64)->Arg(512);

void BM_separate(benchmark::State& state) {
  TermPtr m = parse_term("bd g. car(g) @ (#T :: g)");
  TermPtr n = parse_term("bd g. car(g) @ (#F :: g)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(separate(m, n, 2, 10000));
  }
}
BENCHMARK(BM_separate);

}  // namespace

BENCHMARK_MAIN();
