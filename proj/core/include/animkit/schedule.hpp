// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace animkit {

/// Beta/alpha/alpha-bar/SNR tables of a T-step diffusion forward process.
///
/// Tables are indexed 0..T. beta and alpha are defined for t = 1..T only;
/// the t = 0 slot carries alpha_bar = 1 and snr = +infinity.
class NoiseSchedule {
public:
    /// Builds the derived tables from per-step variance increments.
    /// Requires betas.size() >= 2 and every beta in (0, 1).
    static NoiseSchedule from_betas(std::vector<double> betas);

    int steps() const { return steps_; }

    /// t in 1..T.
    double beta(int t) const { return beta_[static_cast<std::size_t>(t)]; }
    /// t in 1..T.
    double alpha(int t) const { return alpha_[static_cast<std::size_t>(t)]; }
    /// t in 0..T, alpha_bar(0) == 1.
    double alpha_bar(int t) const { return alpha_bar_[static_cast<std::size_t>(t)]; }
    /// t in 0..T, snr(0) == +infinity.
    double snr(int t) const { return snr_[static_cast<std::size_t>(t)]; }

    bool valid_timestep(int t) const { return t >= 0 && t <= steps_; }

private:
    int steps_ = 0;
    std::vector<double> beta_;       // [0..T], index 0 unused (NaN)
    std::vector<double> alpha_;      // [0..T], index 0 unused (NaN)
    std::vector<double> alpha_bar_;  // [0..T]
    std::vector<double> snr_;        // [0..T]
};

/// Linear beta ramp between 0.00085 at t = 1 and 0.012 at t = T.
/// Requires steps >= 2.
NoiseSchedule linear_beta_schedule(int steps);

/// Rescales every step's SNR by `gamma` and rederives per-step betas:
///   snr'_t   = gamma * alpha_bar_t / (1 - alpha_bar_t)
///   abar^c_t = snr'_t / (1 + snr'_t),   abar^c_0 = 1
///   beta'_t  = 1 - abar^c_t / abar^c_{t-1}
/// Requires 0 < gamma <= 1; gamma == 1 is the identity transform.
NoiseSchedule shift_snr(const NoiseSchedule& schedule, double gamma);

/// Inclusive timestep interval [lo, hi].
struct TimestepRange {
    int lo = 0;
    int hi = 0;
};

/// Uniform integer draw from the range; deterministic given the engine state.
int sample_timestep(const TimestepRange& range, std::mt19937_64& rng);

/// x_t = sqrt(alpha_bar_t) * x0 + sqrt(1 - alpha_bar_t) * eps, elementwise.
/// t = 0 returns x0 unchanged.
std::vector<double> forward_diffuse(std::span<const double> x0, int t,
                                    std::span<const double> eps, const NoiseSchedule& schedule);

/// x0' = (x_t - sqrt(1 - alpha_bar_t) * eps_hat) / sqrt(alpha_bar_t).
/// t = 0 returns x_t unchanged.
std::vector<double> predict_x0_from_eps(std::span<const double> x_t, int t,
                                        std::span<const double> eps_hat,
                                        const NoiseSchedule& schedule);

/// CSV dump, header `t,beta,alpha,alpha_bar,snr`, one row per t = 0..T.
/// beta/alpha are blank at t = 0; values carry 12 significant digits and the
/// snr(0) sentinel serializes as `inf`.
void write_schedule_csv(std::ostream& out, const NoiseSchedule& schedule);

}  // namespace animkit
