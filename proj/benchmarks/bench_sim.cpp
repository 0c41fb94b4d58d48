#include <array>

#include <benchmark/benchmark.h>

#include "ulm/sim.hpp"

namespace {

void BM_ClosedLoop(benchmark::State& state) {
    ulm::SimConfig cfg = ulm::default_sim_config();
    cfg.log_oracle = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ulm::run_closed_loop(cfg));
    }
    state.SetItemsProcessed(state.iterations() * cfg.horizon);
}
BENCHMARK(BM_ClosedLoop)->Arg(0)->Arg(1);

void BM_AlphaSweep(benchmark::State& state) {
    const ulm::SimConfig cfg = ulm::default_sim_config();
    const std::array<double, 6> alphas{0.5, 1.0, 1.2, 2.0, 10.0, 100.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ulm::run_alpha_sweep(cfg, alphas, 50, 1e-3));
    }
}
BENCHMARK(BM_AlphaSweep);

}  // namespace
