#include <benchmark/benchmark.h>

#include "ulm/stability.hpp"

namespace {

void BM_LambdaRoots(benchmark::State& state) {
    const ulm::GainPair g{-1.0, -1.0};
    ulm::Complex alpha{2.0, 0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ulm::lambda_roots(alpha, g));
        alpha += ulm::Complex{1e-9, 0.0};
    }
}
BENCHMARK(BM_LambdaRoots);

void BM_PoleMap(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ulm::pole_map(-2.0, 4.0, -3.0, 3.0, n, ulm::GainPair{-1.0, -1.0}));
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_PoleMap)->Arg(121)->Arg(401);

void BM_CharPolyResidual(benchmark::State& state) {
    const auto n = state.range(0);
    const ulm::Matrix h = ulm::Matrix::Identity(n, n) * 2.0 + ulm::Matrix::Constant(n, n, 0.1);
    const ulm::ComplexMatrix a = ulm::assemble_A(h, ulm::GainPair{-0.5, 0.3});
    for (auto _ : state) {
        benchmark::DoNotOptimize(ulm::char_poly_residual(a, ulm::Complex{0.3, 0.2}));
    }
}
BENCHMARK(BM_CharPolyResidual)->Arg(3)->Arg(6);

}  // namespace
