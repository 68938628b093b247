#include <benchmark/benchmark.h>

#include "ogis/engine.hpp"
#include "ogis/families.hpp"
#include "ogis/finite_lab.hpp"
#include "ogis/verifiers.hpp"

namespace {

using namespace ogis;

void BM_Mincheck(benchmark::State& state) {
  const Language target = Language::up_to(3);
  const Language candidate = Language::all_above(0);
  for (auto _ : state) benchmark::DoNotOptimize(mincheck(target, candidate));
}
BENCHMARK(BM_Mincheck);

void BM_MincheckViaCheck(benchmark::State& state) {
  const Language target = parse_language("Finite{1,3,5}");
  const Language candidate = Language::up_to(static_cast<Example>(state.range(0)));
  const CheckStrategy strategy = DescendingCappedStrategy{static_cast<Example>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(mincheck_via_check(target, candidate, strategy));
}
BENCHMARK(BM_MincheckViaCheck)->Arg(16)->Arg(256)->Arg(4096);

void BM_CbFilterViaCheck(benchmark::State& state) {
  const Language target = Language::up_to(2);
  const Language candidate = Language::up_to(static_cast<Example>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cb_filter_via_check(8, target, candidate, DescendingCappedStrategy{1u << 20}));
  }
}
BENCHMARK(BM_CbFilterViaCheck)->Arg(64)->Arg(4096);

void BM_TeachingDimension(benchmark::State& state) {
  const FiniteConceptClass cls = powerset_class(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(teaching_dimension(cls).dimension);
}
BENCHMARK(BM_TeachingDimension)->DenseRange(2, 5);

void BM_MinSetCover(benchmark::State& state) {
  const SetCoverInstance inst = random_cover(static_cast<std::uint64_t>(state.range(0)), 12, 10);
  for (auto _ : state) benchmark::DoNotOptimize(min_set_cover(inst));
}
BENCHMARK(BM_MinSetCover)->Arg(1)->Arg(2)->Arg(3);

void BM_RunCegisChain(benchmark::State& state) {
  RunConfig config;
  config.target = Language::up_to(static_cast<Example>(state.range(0)));
  config.learner = std::string(kChain);
  config.context.chain_limit = 64;
  config.verifier = ArbitraryVerifier{AscendingStrategy{}};
  for (auto _ : state) benchmark::DoNotOptimize(run_cegis(config).steps_used);
}
BENCHMARK(BM_RunCegisChain)->Arg(4)->Arg(32);

void BM_RunCegisPbcegis(benchmark::State& state) {
  RunConfig config;
  config.target = parse_language("Pow32Finite{(0,1),(1,1),(0,4)}");
  config.learner = std::string(kPbcegisFamily3);
  config.verifier = PositiveBoundedVerifier{};
  config.order = ShuffledOrder{7};
  for (auto _ : state) benchmark::DoNotOptimize(run_cegis(config).steps_used);
}
BENCHMARK(BM_RunCegisPbcegis);

}  // namespace

BENCHMARK_MAIN();
