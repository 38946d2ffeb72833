// Serial vs OpenMP timings of the replica-parallel kernels. Arg 0 runs the
// serial reference loop, arg 1 the OpenMP loop; results are identical.

#include <benchmark/benchmark.h>

#include "alps/appendix.hpp"
#include "alps/chain.hpp"
#include "alps/harness.hpp"
#include "alps/skew_bm.hpp"

using namespace alps;

namespace {

Execution policy(const benchmark::State& st) { return st.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

MixtureTarget target(int d) { return MixtureTarget{{{1.0, 1.0, 0.5, 0.0}, {1.0, 2.0, 0.5, 0.0}}, d}; }

void BM_ChainEnsemble(benchmark::State& st) {
  const int d = 1024;
  ExcursionExperiment e;
  e.base.target = target(d);
  e.steps = 200000;
  e.replicas = 16;
  for (auto _ : st) {
    auto r = run_excursions(e, 1, policy(st));
    benchmark::DoNotOptimize(r.stats.excursions);
  }
  st.SetItemsProcessed(st.iterations() * e.steps * static_cast<std::int64_t>(e.replicas));
}
BENCHMARK(BM_ChainEnsemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FullCoordinateEnsemble(benchmark::State& st) {
  SimConfig cfg{target(64), build_ladder(64, 64.0, Spacing::standard()), 4000};
  cfg.full_coordinate = true;
  for (auto _ : st) {
    auto traces = run_replicas(cfg, 2, 16, policy(st));
    benchmark::DoNotOptimize(traces.back().records.back().rung);
  }
  st.SetItemsProcessed(st.iterations() * cfg.steps * 16);
}
BENCHMARK(BM_FullCoordinateEnsemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RefrwSweep(benchmark::State& st) {
  RefrwSweepSpec spec;
  for (auto _ : st) {
    auto cells = refrw_sweep(spec, policy(st));
    benchmark::DoNotOptimize(cells.front().violations);
  }
}
BENCHMARK(BM_RefrwSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SkewBMMarginals(benchmark::State& st) {
  SkewBMConfig c;
  c.constants = make_skew_constants(0.5, 0.4838, 0.6325);
  c.dt = 1e-4;
  c.horizon = 2.0;
  for (auto _ : st) {
    auto s = marginal_sample(c, 2.0, 500, 3, policy(st));
    benchmark::DoNotOptimize(s.front());
  }
}
BENCHMARK(BM_SkewBMMarginals)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BirthDeathOccupation(benchmark::State& st) {
  const auto chain = BirthDeathChain::lazy(50, 0.5);
  for (auto _ : st) {
    auto r = occupation_experiment(chain, 10000, 400, 4, 0, policy(st));
    benchmark::DoNotOptimize(r.mean);
  }
}
BENCHMARK(BM_BirthDeathOccupation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
