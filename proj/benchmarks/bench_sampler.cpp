// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "animkit/sampler.hpp"
#include "animkit/schedule.hpp"

using namespace animkit;

namespace {

FrameSequence random_sequence(int frames, int dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    FrameSequence s = FrameSequence::zeros(frames, dim);
    for (double& v : s.values) {
        v = normal(rng);
    }
    return s;
}

}  // namespace

static void BM_DdimStep(benchmark::State& state) {
    const NoiseSchedule schedule = linear_beta_schedule(1000);
    const int dim = static_cast<int>(state.range(0));
    const FrameSequence x_t = random_sequence(16, dim, 2);
    const FrameSequence eps = random_sequence(16, dim, 3);
    for (auto _ : state) {
        FrameSequence out = ddim_step(x_t, 600, 580, eps, schedule);
        benchmark::DoNotOptimize(out.values.data());
    }
    state.SetItemsProcessed(state.iterations() * 16 * dim);
}
BENCHMARK(BM_DdimStep)->Range(16, 4096);

static void BM_SlidingWindowDenoise(benchmark::State& state) {
    const NoiseSchedule schedule = linear_beta_schedule(999);
    const int frames = static_cast<int>(state.range(0));
    const auto ladder = uniform_timestep_ladder(999, 25);
    const DenoiserPort denoiser = analytic_gaussian_denoiser({0.0}, 0.5, schedule);
    const FrameSequence x_T = random_sequence(frames, 64, 4);
    const ConditionBundle condition;
    SlidingWindowOptions options;
    options.window = 16;
    options.stride = 8;
    for (auto _ : state) {
        std::mt19937_64 rng(5);
        FrameSequence out =
            sliding_window_denoise(x_T, denoiser, schedule, condition, options, ladder, rng);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_SlidingWindowDenoise)->Arg(16)->Arg(48)->Arg(96);

static void BM_PlanWindows(benchmark::State& state) {
    const int frames = static_cast<int>(state.range(0));
    for (auto _ : state) {
        WindowPlan plan = plan_windows(frames, 16, 8, 4);
        benchmark::DoNotOptimize(plan.coverage.data());
    }
}
BENCHMARK(BM_PlanWindows)->Arg(64)->Arg(1024);
