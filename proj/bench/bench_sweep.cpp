#include <benchmark/benchmark.h>

#include "sqc/oracle.hpp"
#include "sqc/qubit.hpp"

namespace {

const sqc::BlochVector kSource{0.6, 0.0, 0.7};

sqc::SweepConfig config_for(const benchmark::State& state) {
    sqc::SweepConfig cfg;
    cfg.grid_density = static_cast<std::size_t>(state.range(0));
    cfg.n_random_samples = 100000;
    return cfg;
}

template <sqc::Execution Exec>
void BM_SweepRegion(benchmark::State& state) {
    const sqc::SweepConfig cfg = config_for(state);
    for (auto _ : state) {
        auto region = sqc::sweep_region(kSource, 0.65, cfg, Exec);
        benchmark::DoNotOptimize(region.reachable_points.data());
    }
    const auto n = cfg.grid_density;
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n * n + cfg.n_random_samples));
}

template <sqc::Execution Exec>
void BM_SweepFrontier(benchmark::State& state) {
    const sqc::SweepConfig cfg = config_for(state);
    for (auto _ : state) {
        auto f = sqc::sweep_frontier(kSource, 1.0, cfg, Exec);
        benchmark::DoNotOptimize(f.data());
    }
}

template <sqc::Execution Exec>
void BM_CoherenceOfFormation(benchmark::State& state) {
    sqc::SweepConfig cfg;
    cfg.grid_density = static_cast<std::size_t>(state.range(0));
    const sqc::DensityMatrix rho = sqc::from_bloch({0.3, 0.4, 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(sqc::oracle_coherence_of_formation(rho, cfg, Exec));
}

}  // namespace

BENCHMARK(BM_SweepRegion<sqc::Execution::Serial>)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepRegion<sqc::Execution::Parallel>)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepFrontier<sqc::Execution::Serial>)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepFrontier<sqc::Execution::Parallel>)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoherenceOfFormation<sqc::Execution::Serial>)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoherenceOfFormation<sqc::Execution::Parallel>)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
