#include <benchmark/benchmark.h>

#include "prophet/classic.hpp"
#include "prophet/mc.hpp"
#include "prophet/random_instances.hpp"
#include "prophet/signaling.hpp"
#include "prophet/strategic.hpp"

namespace {

using namespace prophet;

Instance bench_instance(int boxes) {
    Rng rng(12345);
    std::vector<Dist> v;
    for (int i = 0; i < boxes; ++i) v.push_back(random_box(rng));
    return Instance(std::move(v));
}

void BM_expected_max(benchmark::State& state) {
    const Instance inst = bench_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(expected_max(inst));
}
BENCHMARK(BM_expected_max)->Arg(2)->Arg(8);

void BM_spectrum(benchmark::State& state) {
    const Instance inst = bench_instance(8);
    for (auto _ : state) benchmark::DoNotOptimize(spectrum(inst));
}
BENCHMARK(BM_spectrum);

void BM_best_response(benchmark::State& state) {
    Rng rng(99);
    const Dist d = random_box(rng);
    const double t = 0.5 * (d.mean() + d.upper());
    for (auto _ : state) benchmark::DoNotOptimize(best_response(d, t));
}
BENCHMARK(BM_best_response);

void BM_strategic_payoff(benchmark::State& state) {
    const Instance inst = bench_instance(8);
    const double t = 0.5 * expected_max(inst);
    for (auto _ : state) benchmark::DoNotOptimize(strategic_payoff(inst, t));
}
BENCHMARK(BM_strategic_payoff);

void BM_simulate(benchmark::State& state) {
    const Instance inst = bench_instance(4);
    const double t = 0.5 * expected_max(inst);
    const Profile profile =
        best_response_to_fixed(inst.boxes, std::vector<double>(inst.boxes.size(), t));
    SimConfig cfg;
    cfg.samples = state.range(0);
    cfg.seed = 7;
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate(Policy::fixed(t), profile, cfg));
}
BENCHMARK(BM_simulate)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
