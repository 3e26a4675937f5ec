#include <benchmark/benchmark.h>

#include "gam/agenda.hpp"
#include "gam/corpus.hpp"

namespace {

gam::PlanningProblem stack(int n) {
  return gam::corpus::ground({"", gam::corpus::blocks_domain(), gam::corpus::stack_problem(n)});
}

gam::PlanningProblem hanoi(int n) {
  return gam::corpus::ground({"", gam::corpus::hanoi_domain(), gam::corpus::hanoi_problem(n)});
}

template <bool Parallel>
void relations(benchmark::State& state, const gam::PlanningProblem& p, gam::OrderMethod m) {
  const gam::PlanningGraph g(p, gam::GraphOptions{false});
  for (auto _ : state) {
    auto r = Parallel ? gam::compute_relations(p, p.goals, m, &g) : gam::compute_relations_serial(p, p.goals, m, &g);
    benchmark::DoNotOptimize(r);
  }
  state.counters["goals"] = static_cast<double>(p.goals.size());
}

void BM_StackH_Parallel(benchmark::State& s) { relations<true>(s, stack(s.range(0)), gam::OrderMethod::kH); }
void BM_StackH_Serial(benchmark::State& s) { relations<false>(s, stack(s.range(0)), gam::OrderMethod::kH); }
void BM_StackE_Parallel(benchmark::State& s) { relations<true>(s, stack(s.range(0)), gam::OrderMethod::kE); }
void BM_StackE_Serial(benchmark::State& s) { relations<false>(s, stack(s.range(0)), gam::OrderMethod::kE); }
void BM_HanoiH_Parallel(benchmark::State& s) { relations<true>(s, hanoi(s.range(0)), gam::OrderMethod::kH); }
void BM_HanoiH_Serial(benchmark::State& s) { relations<false>(s, hanoi(s.range(0)), gam::OrderMethod::kH); }

}  // namespace

BENCHMARK(BM_StackH_Parallel)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StackH_Serial)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StackE_Parallel)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StackE_Serial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HanoiH_Parallel)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HanoiH_Serial)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
