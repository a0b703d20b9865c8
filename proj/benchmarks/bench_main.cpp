#include <benchmark/benchmark.h>

#include "qec5/decoder.hpp"
#include "qec5/experiments.hpp"
#include "qec5/flag_table.hpp"

using namespace qec5;

namespace {

void BM_FramePropagation(benchmark::State& state) {
    Dim dim(static_cast<int>(state.range(0)));
    auto sc = build_cycle(dim, true, 3);
    NoiseModel model{NoiseModel::Kind::CircuitLevel, 1e-3};
    std::uint64_t shot = 0;
    for (auto _ : state) {
        Rng rng = Rng::for_shot(1, shot++);
        benchmark::DoNotOptimize(pf_run_noisy(sc, model, rng).outcome_shifts.size());
    }
}
BENCHMARK(BM_FramePropagation)->Arg(2)->Arg(3)->Arg(5);

void BM_GraphBuild(benchmark::State& state) {
    Dim dim(static_cast<int>(state.range(0)));
    auto H = build_check_matrix(dim);
    for (auto _ : state) benchmark::DoNotOptimize(build_graph(H, 3).edges.size());
}
BENCHMARK(BM_GraphBuild)->Arg(2)->Arg(5)->Arg(7);

void BM_DecodeBm(benchmark::State& state) {
    Dim dim(static_cast<int>(state.range(0)));
    auto H = build_check_matrix(dim);
    auto sc = build_cycle(dim, true, 3);
    NoiseModel model{NoiseModel::Kind::CircuitLevel, 3e-3};
    auto priors = build_priors_circuit(sc, model);
    auto g = build_graph(H, 3);
    apply_weights(g, priors);
    auto bpg = build_bp_graph(H, 3, priors);
    // Pre-sample records with at least one detection event.
    std::vector<std::vector<DetectionEvent>> events;
    std::uint64_t shot = 0;
    while (events.size() < 64) {
        Rng rng = Rng::for_shot(2, shot++);
        auto rec = record_from_shifts(sc, pf_run_noisy(sc, model, rng).outcome_shifts);
        auto ev = detection_events(rec);
        if (!ev.empty()) events.push_back(std::move(ev));
    }
    Rng rng(3);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            decode_bm(g, bpg, events[i++ % events.size()], priors, &rng).weight());
    }
}
BENCHMARK(BM_DecodeBm)->Arg(2)->Arg(3);

void BM_FlagTableBuild(benchmark::State& state) {
    Dim dim(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_flag_table(dim).entries.size());
}
BENCHMARK(BM_FlagTableBuild)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
