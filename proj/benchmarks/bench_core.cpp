#include <benchmark/benchmark.h>

#include "qstaff/bistability.hpp"
#include "qstaff/erlang.hpp"
#include "qstaff/retrials.hpp"
#include "qstaff/staffing.hpp"

namespace {

void BM_ErlangB(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const double lambda = 0.9 * s;
  for (auto _ : state)
    benchmark::DoNotOptimize(qstaff::erlang_b(s, lambda));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ErlangB)->RangeMultiplier(4)->Range(100, 6400)->Complexity();

void BM_SolveCohen(benchmark::State& state) {
  const auto policy = qstaff::Policy::bernoulli(0.1);
  for (auto _ : state)
    benchmark::DoNotOptimize(qstaff::solve_cohen(100, 80.0, policy));
}
BENCHMARK(BM_SolveCohen);

void BM_StaffRefined(benchmark::State& state) {
  const qstaff::StaffingProblem problem{
      100, 0.01, qstaff::Policy::bernoulli(0.1), qstaff::Variant::rejection,
      false};
  for (auto _ : state)
    benchmark::DoNotOptimize(qstaff::staff_refined(problem));
}
BENCHMARK(BM_StaffRefined);

void BM_CarriedTrafficArgmax(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(qstaff::carried_traffic_argmax(s));
}
BENCHMARK(BM_CarriedTrafficArgmax)->Arg(10)->Arg(100)->Arg(550);

}  // namespace

BENCHMARK_MAIN();
