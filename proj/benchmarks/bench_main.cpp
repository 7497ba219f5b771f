#include "akb/pso.hpp"
#include "akb/suite.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_SuiteEvaluate(benchmark::State& state) {
  const akb::Suite suite = akb::desk_suite(10, 42);
  const auto& problem = suite.problems[static_cast<std::size_t>(state.range(0))];
  akb::RngStream rng(1);
  akb::Vector x(10);
  for (Eigen::Index i = 0; i < 10; ++i) x[i] = rng.uniform(-100.0, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(problem(x));
  state.SetLabel(problem.name());
}
BENCHMARK(BM_SuiteEvaluate)->DenseRange(0, 11);

void BM_PsoRun(benchmark::State& state) {
  const akb::Suite suite = akb::desk_suite(10, 42);
  akb::PsoConfig cfg = akb::PsoConfig::tvac(10);
  if (state.range(0) == 1) cfg.inertia = akb::AnakatabaticInertia{akb::builtin_model("Rightward Peaks")};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(akb::run(suite.problems[6].problem, cfg).final_best);
  }
  state.SetItemsProcessed(state.iterations() * cfg.budget.max_evals);
  state.SetLabel(state.range(0) == 1 ? "rightward-peaks" : "ldiw");
}
BENCHMARK(BM_PsoRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
