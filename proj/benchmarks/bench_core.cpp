#include <benchmark/benchmark.h>

#include <random>

#include "savmac/config.hpp"
#include "savmac/experiments.hpp"
#include "savmac/operators.hpp"
#include "savmac/stepper.hpp"

namespace {

savmac::CellField random_cell(const savmac::StaggeredGrid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  savmac::CellField f(g);
  for (size_t n = 0; n < f.size(); ++n) f.data()[n] = dist(rng);
  return f;
}

void BM_laplace_neumann(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  savmac::StaggeredGrid g(n, n);
  savmac::CellField f = random_cell(g, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(savmac::laplace_neumann(f, g));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_laplace_neumann)->Arg(32)->Arg(64)->Arg(128);

void BM_inner_M(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  savmac::StaggeredGrid g(n, n);
  savmac::CellField a = random_cell(g, 1);
  savmac::CellField b = random_cell(g, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(savmac::inner_M(a, b, g));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_inner_M)->Arg(64)->Arg(256);

void BM_decoupled_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  savmac::RunConfig cfg = savmac::preset(savmac::ExperimentKind::converge);
  cfg.nx = cfg.ny = n;
  savmac::StaggeredGrid g = cfg.make_grid();
  savmac::ChnsState s = savmac::init_condition(cfg, g);
  for (auto _ : state) {
    savmac::StepResult r = savmac::decoupled_step(s, cfg.params, g);
    benchmark::DoNotOptimize(r.next.R);
  }
}
BENCHMARK(BM_decoupled_step)->Unit(benchmark::kMillisecond)->Arg(32)->Arg(64);

void BM_coupled_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  savmac::RunConfig cfg = savmac::preset(savmac::ExperimentKind::converge);
  cfg.nx = cfg.ny = n;
  cfg.params.mode = savmac::StepMode::coupled;
  savmac::StaggeredGrid g = cfg.make_grid();
  savmac::ChnsState s = savmac::init_condition(cfg, g);
  for (auto _ : state) {
    savmac::StepResult r = savmac::coupled_step(s, cfg.params, g);
    benchmark::DoNotOptimize(r.next.R);
  }
}
BENCHMARK(BM_coupled_step)->Unit(benchmark::kMillisecond)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
