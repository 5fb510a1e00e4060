// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "animkit/schedule.hpp"

using namespace animkit;

static void BM_LinearBetaSchedule(benchmark::State& state) {
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state) {
        NoiseSchedule s = linear_beta_schedule(steps);
        benchmark::DoNotOptimize(s.alpha_bar(steps));
    }
}
BENCHMARK(BM_LinearBetaSchedule)->Arg(1000)->Arg(4000);

static void BM_ShiftSnr(benchmark::State& state) {
    const NoiseSchedule base = linear_beta_schedule(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        NoiseSchedule shifted = shift_snr(base, 0.5);
        benchmark::DoNotOptimize(shifted.alpha_bar(base.steps()));
    }
}
BENCHMARK(BM_ShiftSnr)->Arg(1000)->Arg(4000);

static void BM_ForwardDiffuse(benchmark::State& state) {
    const NoiseSchedule schedule = linear_beta_schedule(1000);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x0(n), eps(n);
    for (std::size_t i = 0; i < n; ++i) {
        x0[i] = normal(rng);
        eps[i] = normal(rng);
    }
    for (auto _ : state) {
        auto out = forward_diffuse(x0, 500, eps, schedule);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ForwardDiffuse)->Range(1 << 10, 1 << 18);

BENCHMARK_MAIN();
