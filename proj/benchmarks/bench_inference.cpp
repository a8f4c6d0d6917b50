#include <benchmark/benchmark.h>

#include <vector>

#include "dyadic/distribution.hpp"
#include "dyadic/inference.hpp"
#include "dyadic/null_model.hpp"
#include "dyadic/sim.hpp"

namespace {

const dyadic::DyadTable& reference_table() {
    static const auto table = dyadic::simulate_reference(1).table;
    return table;
}

void BM_PbPmf(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const std::vector<dyadic::TrialGroup> groups = {{n / 4, 0.1}, {n / 4, 0.35}, {n / 4, 0.6}, {n - 3 * (n / 4), 0.9}};
    for (auto _ : state) benchmark::DoNotOptimize(dyadic::pb_pmf(groups));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PbPmf)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_ExactAllMeasures(benchmark::State& state) {
    const auto& table = reference_table();
    for (auto _ : state) {
        for (auto m : dyadic::kAllMeasures) benchmark::DoNotOptimize(dyadic::exact_test(table, m));
    }
}
BENCHMARK(BM_ExactAllMeasures)->Unit(benchmark::kMillisecond);

void BM_NullSample(benchmark::State& state) {
    const auto model = dyadic::fit(reference_table());
    const dyadic::NullSampler sampler(model);
    dyadic::Rng rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(rng));
}
BENCHMARK(BM_NullSample);

void BM_BootstrapAllMeasures(benchmark::State& state) {
    dyadic::BootstrapOptions opt;
    opt.trials = static_cast<std::uint64_t>(state.range(0));
    opt.seed = 5;
    opt.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(dyadic::bootstrap_tests(reference_table(), dyadic::kAllMeasures, opt));
}
BENCHMARK(BM_BootstrapAllMeasures)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
