// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "animkit/driving_signal.hpp"
#include "animkit/image.hpp"
#include "animkit/keypoints.hpp"
#include "animkit/metrics.hpp"

using namespace animkit;

namespace {

Image random_image(int h, int w, int c, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    Image img(h, w, c);
    for (std::size_t i = 0; i < img.size(); ++i) {
        img.data()[i] = dist(rng);
    }
    return img;
}

KeypointFrame spread_keypoints(int width, int height) {
    KeypointFrame frame;
    frame.width = width;
    frame.height = height;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> x(0.0, width - 1.0);
    std::uniform_real_distribution<double> y(0.0, height - 1.0);
    for (auto& p : frame.points) {
        p = {x(rng), y(rng), 1.0};
    }
    return frame;
}

}  // namespace

static void BM_SharpnessScore(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const Image crop = random_image(side, side, 3, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sharpness_score(crop));
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_SharpnessScore)->Arg(32)->Arg(64)->Arg(128);

static void BM_RenderPoseMap(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const KeypointFrame frame = spread_keypoints(side, side);
    for (auto _ : state) {
        Image map = render_pose_map(frame, side, side);
        benchmark::DoNotOptimize(map.data());
    }
}
BENCHMARK(BM_RenderPoseMap)->Arg(256)->Arg(512);

static void BM_Ssim(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const Image a = random_image(side, side, 3, 8);
    const Image b = random_image(side, side, 3, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssim(a, b));
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Ssim)->Arg(128)->Arg(256)->Arg(512);

static void BM_GaussianBlur(benchmark::State& state) {
    const Image img = random_image(128, 128, 1, 10);
    const double sigma = static_cast<double>(state.range(0));
    for (auto _ : state) {
        Image out = gaussian_blur(img, sigma);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_GaussianBlur)->Arg(1)->Arg(2)->Arg(4);
