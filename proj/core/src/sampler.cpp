// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include "animkit/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace animkit {

FrameSequence FrameSequence::zeros(int frames, int dim) {
    if (frames < 0 || dim < 0) {
        throw std::invalid_argument("FrameSequence: negative shape");
    }
    FrameSequence s;
    s.frames = frames;
    s.dim = dim;
    s.values.assign(static_cast<std::size_t>(frames) * dim, 0.0);
    return s;
}

FrameSequence FrameSequence::slice(int begin, int end) const {
    if (begin < 0 || end > frames || begin > end) {
        throw std::invalid_argument("FrameSequence::slice: range out of bounds");
    }
    FrameSequence s;
    s.frames = end - begin;
    s.dim = dim;
    s.values.assign(values.begin() + static_cast<std::ptrdiff_t>(begin) * dim,
                    values.begin() + static_cast<std::ptrdiff_t>(end) * dim);
    return s;
}

ConditionBundle ConditionBundle::slice(int begin, int end) const {
    ConditionBundle out;
    out.reference = reference;
    if (!driving.empty()) {
        if (begin < 0 || end > static_cast<int>(driving.size()) || begin > end) {
            throw std::invalid_argument("ConditionBundle::slice: range out of bounds");
        }
        out.driving.assign(driving.begin() + begin, driving.begin() + end);
    }
    return out;
}

FrameSequence cfg_epsilon(const FrameSequence& eps_uncond, const FrameSequence& eps_cond,
                          double omega) {
    if (!eps_uncond.same_shape(eps_cond)) {
        throw std::invalid_argument("cfg_epsilon: shape mismatch");
    }
    // eps_uncond + omega * (eps_uncond - eps_cond), blended so the omega = 0
    // and omega = -1 anchors return the respective branch bit-exactly.
    FrameSequence out = eps_uncond;
    const double u_coef = 1.0 + omega;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = u_coef * eps_uncond.values[i] - omega * eps_cond.values[i];
    }
    return out;
}

namespace {

void check_step_args(const FrameSequence& x_t, int t, int t_prev, const FrameSequence& eps_hat,
                     const NoiseSchedule& schedule) {
    if (!x_t.same_shape(eps_hat)) {
        throw std::invalid_argument("ddim_step: shape mismatch");
    }
    if (t_prev >= t || t_prev < 0 || t > schedule.steps()) {
        throw std::invalid_argument("ddim_step: require T >= t > t_prev >= 0");
    }
}

}  // namespace

FrameSequence ddim_step(const FrameSequence& x_t, int t, int t_prev, const FrameSequence& eps_hat,
                        const NoiseSchedule& schedule) {
    check_step_args(x_t, t, t_prev, eps_hat, schedule);
    const double a_t = std::sqrt(schedule.alpha_bar(t));
    const double b_t = std::sqrt(1.0 - schedule.alpha_bar(t));
    const double a_prev = std::sqrt(schedule.alpha_bar(t_prev));
    const double b_prev = std::sqrt(1.0 - schedule.alpha_bar(t_prev));
    FrameSequence out = x_t;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double x0 = (x_t.values[i] - b_t * eps_hat.values[i]) / a_t;
        out.values[i] = a_prev * x0 + b_prev * eps_hat.values[i];
    }
    return out;
}

FrameSequence ddim_step_stochastic(const FrameSequence& x_t, int t, int t_prev,
                                   const FrameSequence& eps_hat, const NoiseSchedule& schedule,
                                   double eta, std::mt19937_64& rng) {
    if (eta == 0.0) {
        return ddim_step(x_t, t, t_prev, eps_hat, schedule);
    }
    check_step_args(x_t, t, t_prev, eps_hat, schedule);
    const double abar_t = schedule.alpha_bar(t);
    const double abar_prev = schedule.alpha_bar(t_prev);
    const double a_t = std::sqrt(abar_t);
    const double b_t = std::sqrt(1.0 - abar_t);
    const double a_prev = std::sqrt(abar_prev);
    double sigma2 = 0.0;
    if (abar_t < 1.0) {
        sigma2 = eta * eta * (1.0 - abar_prev) / (1.0 - abar_t) * (1.0 - abar_t / abar_prev);
        sigma2 = std::min(sigma2, 1.0 - abar_prev);
    }
    const double dir = std::sqrt(std::max(1.0 - abar_prev - sigma2, 0.0));
    const double sigma = std::sqrt(sigma2);
    std::normal_distribution<double> normal(0.0, 1.0);
    FrameSequence out = x_t;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double x0 = (x_t.values[i] - b_t * eps_hat.values[i]) / a_t;
        out.values[i] = a_prev * x0 + dir * eps_hat.values[i] + sigma * normal(rng);
    }
    return out;
}

FrameSequence start_latent_from_reference(std::span<const double> reference_latent,
                                          const NoiseSchedule& schedule, int frames,
                                          std::mt19937_64& rng) {
    if (frames < 1) {
        throw std::invalid_argument("start_latent_from_reference: need at least 1 frame");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> eps(reference_latent.size());
    for (double& e : eps) {
        e = normal(rng);
    }
    const std::vector<double> x_T = forward_diffuse(reference_latent, schedule.steps(), eps, schedule);
    FrameSequence out = FrameSequence::zeros(frames, static_cast<int>(x_T.size()));
    for (int f = 0; f < frames; ++f) {
        std::copy(x_T.begin(), x_T.end(), out.frame(f).begin());
    }
    return out;
}

std::vector<int> uniform_timestep_ladder(int total_steps, int steps) {
    if (steps < 1 || steps > total_steps) {
        throw std::invalid_argument("uniform_timestep_ladder: require 1 <= steps <= T");
    }
    std::vector<int> ladder;
    ladder.reserve(static_cast<std::size_t>(steps) + 1);
    if (steps == 1) {
        ladder.push_back(total_steps);
    } else {
        for (int k = steps - 1; k >= 0; --k) {
            const double pos = 1.0 + (total_steps - 1) * (static_cast<double>(k) / (steps - 1));
            ladder.push_back(static_cast<int>(std::lround(pos)));
        }
    }
    ladder.push_back(0);
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i] >= ladder[i - 1]) {
            throw std::invalid_argument("uniform_timestep_ladder: ladder not strictly decreasing");
        }
    }
    return ladder;
}

bool WindowPlan::covers_all() const {
    return std::all_of(coverage.begin(), coverage.end(), [](int c) { return c >= 1; });
}

WindowPlan plan_windows(int frames, int window, int stride, int offset) {
    if (window < 1 || window > frames) {
        throw std::invalid_argument("plan_windows: require 1 <= window <= frames");
    }
    if (stride < 1 || stride > window) {
        throw std::invalid_argument("plan_windows: require 1 <= stride <= window");
    }
    if (offset < 0 || offset >= stride) {
        throw std::invalid_argument("plan_windows: require 0 <= offset < stride");
    }
    WindowPlan plan;
    plan.sequence_length = frames;
    plan.window = window;
    const int last_start = frames - window;
    for (int raw = -offset;; raw += stride) {
        const int start = std::clamp(raw, 0, last_start);
        if (plan.starts.empty() || plan.starts.back() != start) {
            plan.starts.push_back(start);
        }
        if (raw >= last_start) {
            break;
        }
    }
    plan.coverage.assign(static_cast<std::size_t>(frames), 0);
    for (int start : plan.starts) {
        for (int f = start; f < start + window; ++f) {
            ++plan.coverage[static_cast<std::size_t>(f)];
        }
    }
    if (!plan.covers_all()) {
        throw std::logic_error("plan_windows: uncovered frame");
    }
    return plan;
}

namespace {

FrameSequence guided_epsilon(const FrameSequence& x, int t, const DenoiserPort& denoiser,
                             const ConditionBundle* condition, double omega) {
    FrameSequence eps_uncond = denoiser(x, t, nullptr);
    if (!eps_uncond.same_shape(x)) {
        throw std::logic_error("denoiser output shape mismatch");
    }
    if (condition == nullptr) {
        return eps_uncond;
    }
    FrameSequence eps_cond = denoiser(x, t, condition);
    return cfg_epsilon(eps_uncond, eps_cond, omega);
}

}  // namespace

FrameSequence denoise_window(FrameSequence x_t, const DenoiserPort& denoiser,
                             const NoiseSchedule& schedule, const ConditionBundle* condition,
                             double omega, std::span<const int> ladder, double eta,
                             std::mt19937_64* rng) {
    if (ladder.size() < 2 || ladder.back() != 0) {
        throw std::invalid_argument("denoise_window: ladder must end at 0");
    }
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const int t = ladder[i];
        const int t_prev = ladder[i + 1];
        const FrameSequence eps = guided_epsilon(x_t, t, denoiser, condition, omega);
        if (eta > 0.0) {
            if (rng == nullptr) {
                throw std::invalid_argument("denoise_window: eta > 0 requires an rng");
            }
            x_t = ddim_step_stochastic(x_t, t, t_prev, eps, schedule, eta, *rng);
        } else {
            x_t = ddim_step(x_t, t, t_prev, eps, schedule);
        }
    }
    return x_t;
}

FrameSequence sliding_window_denoise(FrameSequence x_t, const DenoiserPort& denoiser,
                                     const NoiseSchedule& schedule,
                                     const ConditionBundle& condition,
                                     const SlidingWindowOptions& options,
                                     std::span<const int> ladder, std::mt19937_64& rng) {
    if (ladder.size() < 2 || ladder.back() != 0) {
        throw std::invalid_argument("sliding_window_denoise: ladder must end at 0");
    }
    const int frames = x_t.frames;
    if (frames < 1) {
        throw std::invalid_argument("sliding_window_denoise: empty sequence");
    }
    const int window = std::min(options.window, frames);
    const int stride = std::clamp(options.stride, 1, window);
    std::uniform_int_distribution<int> offset_dist(0, stride - 1);

    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const int t = ladder[i];
        const int t_prev = ladder[i + 1];
        const int offset = options.random_offset ? offset_dist(rng) : 0;
        const WindowPlan plan = plan_windows(frames, window, stride, offset);

        FrameSequence eps_sum = FrameSequence::zeros(frames, x_t.dim);
        for (int start : plan.starts) {
            const int end = start + window;
            const FrameSequence x_win = x_t.slice(start, end);
            const ConditionBundle cond_win = condition.slice(start, end);
            const FrameSequence eps_win = guided_epsilon(x_win, t, denoiser, &cond_win, options.omega);
            for (int f = start; f < end; ++f) {
                auto dst = eps_sum.frame(f);
                auto src = eps_win.frame(f - start);
                for (int d = 0; d < x_t.dim; ++d) {
                    dst[d] += src[d];
                }
            }
        }
        for (int f = 0; f < frames; ++f) {
            const int count = plan.coverage[static_cast<std::size_t>(f)];
            const double weight = 1.0 / count;
            if (std::abs(weight * count - 1.0) > 1e-12) {
                throw std::logic_error("sliding_window_denoise: overlap weights do not sum to 1");
            }
            for (double& v : eps_sum.frame(f)) {
                v /= count;
            }
        }
        if (options.eta > 0.0) {
            x_t = ddim_step_stochastic(x_t, t, t_prev, eps_sum, schedule, options.eta, rng);
        } else {
            x_t = ddim_step(x_t, t, t_prev, eps_sum, schedule);
        }
    }
    return x_t;
}

DenoiserPort analytic_gaussian_denoiser(std::vector<double> mu, double sigma,
                                        const NoiseSchedule& schedule) {
    if (sigma <= 0.0) {
        throw std::invalid_argument("analytic_gaussian_denoiser: sigma must be positive");
    }
    if (mu.empty()) {
        throw std::invalid_argument("analytic_gaussian_denoiser: mu must be nonempty");
    }
    return [mu = std::move(mu), sigma, schedule](const FrameSequence& x_t, int t,
                                                 const ConditionBundle*) -> FrameSequence {
        if (!schedule.valid_timestep(t)) {
            throw std::invalid_argument("analytic_gaussian_denoiser: timestep out of range");
        }
        if (static_cast<int>(mu.size()) != 1 && static_cast<int>(mu.size()) != x_t.dim) {
            throw std::invalid_argument("analytic_gaussian_denoiser: mu size mismatch");
        }
        FrameSequence eps = FrameSequence::zeros(x_t.frames, x_t.dim);
        if (t == 0) {
            return eps;
        }
        const double a = std::sqrt(schedule.alpha_bar(t));
        const double b = std::sqrt(1.0 - schedule.alpha_bar(t));
        const double gain = a * sigma * sigma / (a * a * sigma * sigma + b * b);
        for (int f = 0; f < x_t.frames; ++f) {
            auto x = x_t.frame(f);
            auto e = eps.frame(f);
            for (int d = 0; d < x_t.dim; ++d) {
                const double m = mu.size() == 1 ? mu[0] : mu[static_cast<std::size_t>(d)];
                const double posterior_mean = m + gain * (x[d] - a * m);
                e[d] = (x[d] - a * posterior_mean) / b;
            }
        }
        return eps;
    };
}

}  // namespace animkit
