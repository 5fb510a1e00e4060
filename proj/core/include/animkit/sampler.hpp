// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "animkit/image.hpp"
#include "animkit/schedule.hpp"

namespace animkit {

/// N frames of flat latent vectors, row-major frames x dim, double precision.
struct FrameSequence {
    int frames = 0;
    int dim = 0;
    std::vector<double> values;

    static FrameSequence zeros(int frames, int dim);

    std::span<double> frame(int i) {
        return {values.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<const double> frame(int i) const {
        return {values.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }

    /// Copy of frames [begin, end).
    FrameSequence slice(int begin, int end) const;

    bool same_shape(const FrameSequence& other) const {
        return frames == other.frames && dim == other.dim;
    }
    bool operator==(const FrameSequence&) const = default;
};

/// Conditioning slots for a denoiser: reference image and per-frame driving
/// signals. Passing no bundle at all selects the unconditional branch.
struct ConditionBundle {
    std::optional<Image> reference;
    std::vector<Image> driving;

    /// Keeps the reference, slices driving signals to frames [begin, end).
    ConditionBundle slice(int begin, int end) const;
};

/// Epsilon predictor contract: (x_t, t, condition) -> eps_hat of equal shape.
/// `condition == nullptr` is the unconditional branch. Implementations must be
/// pure functions of their arguments.
using DenoiserPort =
    std::function<FrameSequence(const FrameSequence& x_t, int t, const ConditionBundle* condition)>;

/// Guided noise combination: eps_uncond + omega * (eps_uncond - eps_cond).
FrameSequence cfg_epsilon(const FrameSequence& eps_uncond, const FrameSequence& eps_cond,
                          double omega);

/// Deterministic reverse update:
///   x_{t_prev} = sqrt(abar_{t_prev}) * x0' + sqrt(1 - abar_{t_prev}) * eps_hat
/// with x0' recovered from eps_hat. Requires T >= t > t_prev >= 0.
FrameSequence ddim_step(const FrameSequence& x_t, int t, int t_prev, const FrameSequence& eps_hat,
                        const NoiseSchedule& schedule);

/// Stochastic variant; eta = 0 reduces to ddim_step exactly (rng untouched),
/// eta = 1 is the ancestral DDPM-style update.
FrameSequence ddim_step_stochastic(const FrameSequence& x_t, int t, int t_prev,
                                   const FrameSequence& eps_hat, const NoiseSchedule& schedule,
                                   double eta, std::mt19937_64& rng);

/// Start latent built by fully diffusing a reference latent to t = T with one
/// shared Gaussian draw, replicated across `frames` output frames.
FrameSequence start_latent_from_reference(std::span<const double> reference_latent,
                                          const NoiseSchedule& schedule, int frames,
                                          std::mt19937_64& rng);

/// Strictly decreasing timestep ladder: `steps` points uniformly spaced over
/// [1, T], followed by the terminal 0. Requires 1 <= steps <= T.
std::vector<int> uniform_timestep_ladder(int total_steps, int steps);

/// Equal-length sliding windows covering [0, N).
struct WindowPlan {
    int sequence_length = 0;
    int window = 0;
    std::vector<int> starts;    // window start indices, ascending
    std::vector<int> coverage;  // per-frame overlap counts, all >= 1

    bool covers_all() const;
};

/// Window starts are {-offset + k*stride : k >= 0} clamped into [0, N-W] and
/// deduplicated; the tail window at N-W is always present. Requires
/// 1 <= W <= N, 1 <= stride <= W, 0 <= offset < stride.
WindowPlan plan_windows(int frames, int window, int stride, int offset);

struct SlidingWindowOptions {
    int window = 16;
    int stride = 8;
    double omega = 0.0;         // guidance weight
    double eta = 0.0;           // 0 = deterministic
    bool random_offset = true;  // false pins every per-step offset to 0
};

/// Whole-sequence denoising without windowing: per ladder step evaluate both
/// denoiser branches, combine with cfg_epsilon, apply one scheduler step.
FrameSequence denoise_window(FrameSequence x_t, const DenoiserPort& denoiser,
                             const NoiseSchedule& schedule, const ConditionBundle* condition,
                             double omega, std::span<const int> ladder, double eta = 0.0,
                             std::mt19937_64* rng = nullptr);

/// Long-sequence denoising over randomly offset sliding windows. Each ladder
/// step draws a fresh offset, denoises every window (both guidance branches),
/// averages per-frame noise predictions across overlapping windows with
/// uniform weights, then applies one shared scheduler step. Windows longer
/// than the sequence fall back to a single full window.
FrameSequence sliding_window_denoise(FrameSequence x_t, const DenoiserPort& denoiser,
                                     const NoiseSchedule& schedule,
                                     const ConditionBundle& condition,
                                     const SlidingWindowOptions& options,
                                     std::span<const int> ladder, std::mt19937_64& rng);

/// Optimal epsilon predictor for x0 ~ N(mu, sigma^2 I):
///   E[x0|x_t] = mu + (a sigma^2 / (a^2 sigma^2 + b^2)) * (x_t - a mu)
///   eps_hat   = (x_t - a E[x0|x_t]) / b
/// with a = sqrt(abar_t), b = sqrt(1 - abar_t). `mu` must have size 1
/// (broadcast) or match the frame dimension.
DenoiserPort analytic_gaussian_denoiser(std::vector<double> mu, double sigma,
                                        const NoiseSchedule& schedule);

}  // namespace animkit
