// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include "animkit/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace animkit {

NoiseSchedule NoiseSchedule::from_betas(std::vector<double> betas) {
    if (betas.size() < 2) {
        throw std::invalid_argument("NoiseSchedule: need at least 2 steps");
    }
    for (double b : betas) {
        if (!(b > 0.0 && b < 1.0)) {
            throw std::invalid_argument("NoiseSchedule: beta outside (0, 1)");
        }
    }
    NoiseSchedule s;
    s.steps_ = static_cast<int>(betas.size());
    const std::size_t n = betas.size() + 1;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.beta_.assign(n, nan);
    s.alpha_.assign(n, nan);
    s.alpha_bar_.assign(n, 1.0);
    s.snr_.assign(n, std::numeric_limits<double>::infinity());
    for (int t = 1; t <= s.steps_; ++t) {
        s.beta_[t] = betas[static_cast<std::size_t>(t) - 1];
        s.alpha_[t] = 1.0 - s.beta_[t];
        s.alpha_bar_[t] = s.alpha_bar_[t - 1] * s.alpha_[t];
        s.snr_[t] = s.alpha_bar_[t] / (1.0 - s.alpha_bar_[t]);
    }
    return s;
}

NoiseSchedule linear_beta_schedule(int steps) {
    if (steps < 2) {
        throw std::invalid_argument("linear_beta_schedule: steps must be >= 2");
    }
    std::vector<double> betas(static_cast<std::size_t>(steps));
    for (int t = 1; t <= steps; ++t) {
        const double frac = static_cast<double>(t - 1) / (steps - 1);
        betas[static_cast<std::size_t>(t) - 1] = 0.00085 * (1.0 - frac) + 0.012 * frac;
    }
    return NoiseSchedule::from_betas(std::move(betas));
}

NoiseSchedule shift_snr(const NoiseSchedule& schedule, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("shift_snr: gamma must be in (0, 1]");
    }
    if (gamma == 1.0) {
        return schedule;  // identity shift
    }
    const int T = schedule.steps();
    std::vector<double> betas(static_cast<std::size_t>(T));
    double abar_c_prev = 1.0;  // snr(0) = inf limit
    for (int t = 1; t <= T; ++t) {
        const double snr_t = gamma * schedule.snr(t);
        const double abar_c = snr_t / (1.0 + snr_t);
        betas[static_cast<std::size_t>(t) - 1] = 1.0 - abar_c / abar_c_prev;
        abar_c_prev = abar_c;
    }
    return NoiseSchedule::from_betas(std::move(betas));
}

int sample_timestep(const TimestepRange& range, std::mt19937_64& rng) {
    if (range.lo > range.hi || range.lo < 0) {
        throw std::invalid_argument("sample_timestep: invalid range");
    }
    std::uniform_int_distribution<int> dist(range.lo, range.hi);
    return dist(rng);
}

namespace {

void check_elementwise_args(std::size_t a, std::size_t b, int t, const NoiseSchedule& schedule,
                            const char* op) {
    if (a != b) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }
    if (!schedule.valid_timestep(t)) {
        throw std::invalid_argument(std::string(op) + ": timestep out of range");
    }
}

}  // namespace

std::vector<double> forward_diffuse(std::span<const double> x0, int t,
                                    std::span<const double> eps, const NoiseSchedule& schedule) {
    check_elementwise_args(x0.size(), eps.size(), t, schedule, "forward_diffuse");
    const double a = std::sqrt(schedule.alpha_bar(t));
    const double b = std::sqrt(1.0 - schedule.alpha_bar(t));
    std::vector<double> out(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) {
        out[i] = a * x0[i] + b * eps[i];
    }
    return out;
}

std::vector<double> predict_x0_from_eps(std::span<const double> x_t, int t,
                                        std::span<const double> eps_hat,
                                        const NoiseSchedule& schedule) {
    check_elementwise_args(x_t.size(), eps_hat.size(), t, schedule, "predict_x0_from_eps");
    if (t == 0) {
        return {x_t.begin(), x_t.end()};
    }
    const double a = std::sqrt(schedule.alpha_bar(t));
    const double b = std::sqrt(1.0 - schedule.alpha_bar(t));
    std::vector<double> out(x_t.size());
    for (std::size_t i = 0; i < x_t.size(); ++i) {
        out[i] = (x_t[i] - b * eps_hat[i]) / a;
    }
    return out;
}

void write_schedule_csv(std::ostream& out, const NoiseSchedule& schedule) {
    out << "t,beta,alpha,alpha_bar,snr\n";
    char buf[128];
    for (int t = 0; t <= schedule.steps(); ++t) {
        if (t == 0) {
            std::snprintf(buf, sizeof(buf), "0,,,%.12g,inf\n", schedule.alpha_bar(0));
        } else {
            std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g\n", t, schedule.beta(t),
                          schedule.alpha(t), schedule.alpha_bar(t), schedule.snr(t));
        }
        out << buf;
    }
}

}  // namespace animkit
