// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "animkit/image_io.hpp"
#include "animkit/sampler.hpp"
#include "animkit/schedule.hpp"
#include "commands.hpp"

namespace animkit::cli {

namespace fs = std::filesystem;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

namespace {

class KeyValueConfig {
public:
    explicit KeyValueConfig(const fs::path& path) {
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error("cannot open config file: " + path.string());
        }
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                continue;
            }
            auto trim = [](std::string s) {
                const auto from = s.find_first_not_of(" \t\r");
                const auto to = s.find_last_not_of(" \t\r");
                return from == std::string::npos ? std::string{} : s.substr(from, to - from + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (!key.empty()) {
                values_[key] = value;
            }
        }
    }

    const std::string& require(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end() || it->second.empty()) {
            throw std::runtime_error("missing required config field: " + key);
        }
        return it->second;
    }

    std::string get(const std::string& key, const std::string& fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double number(const std::string& key, double fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) {
            return fallback;
        }
        return parse_number(key, it->second);
    }

    double required_number(const std::string& key) const {
        return parse_number(key, require(key));
    }

private:
    static double parse_number(const std::string& key, const std::string& value) {
        try {
            std::size_t consumed = 0;
            const double parsed = std::stod(value, &consumed);
            if (consumed != value.size()) {
                throw std::invalid_argument(value);
            }
            return parsed;
        } catch (const std::exception&) {
            throw std::runtime_error("config field " + key + " is not a number: " + value);
        }
    }

    std::map<std::string, std::string> values_;
};

std::vector<double> parse_mu(const std::string& text) {
    std::vector<double> mu;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            mu.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw std::runtime_error("config field mu is not a comma-separated number list: " +
                                     text);
        }
    }
    if (mu.empty()) {
        throw std::runtime_error("config field mu is empty");
    }
    return mu;
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(values[i]);
    }
    return out;
}

}  // namespace

int run_sample(const GlobalOptions& global, const SampleOptions& options) {
    const KeyValueConfig config(options.config_file);

    const std::string denoiser_kind = config.get("denoiser", "analytic-gaussian");
    if (denoiser_kind != "analytic-gaussian") {
        throw std::runtime_error("config field denoiser must be analytic-gaussian, got " +
                                 denoiser_kind);
    }
    const std::uint64_t seed = static_cast<std::uint64_t>(config.required_number("seed"));
    const std::vector<double> mu = parse_mu(config.require("mu"));
    const double sigma = config.required_number("sigma");
    const int frames = static_cast<int>(config.required_number("frames"));
    const int window = static_cast<int>(config.required_number("window"));
    const int stride = static_cast<int>(config.required_number("stride"));
    const double omega = config.number("omega", 0.0);
    const double gamma = config.number("gamma", 1.0);
    const int total_steps = static_cast<int>(config.number("T", 999));
    const int steps = static_cast<int>(config.number("steps", 50));
    const int samples = static_cast<int>(config.number("samples", 1));
    const double eta = config.number("eta", 0.0);

    if (sigma <= 0.0) {
        throw std::runtime_error("config field sigma must be positive");
    }
    if (frames < 1) {
        throw std::runtime_error("config field frames must be >= 1");
    }
    if (samples < 1) {
        throw std::runtime_error("config field samples must be >= 1");
    }
    if (window < 1) {
        throw std::runtime_error("config field window must be >= 1");
    }
    if (stride < 1) {
        throw std::runtime_error("config field stride must be >= 1");
    }

    const NoiseSchedule schedule = shift_snr(linear_beta_schedule(total_steps), gamma);
    const std::vector<int> ladder = uniform_timestep_ladder(total_steps, steps);
    const DenoiserPort denoiser = analytic_gaussian_denoiser(mu, sigma, schedule);
    const int dim = static_cast<int>(mu.size());

    SlidingWindowOptions sliding;
    sliding.window = window;
    sliding.stride = std::min(stride, std::min(window, frames));
    sliding.omega = omega;
    sliding.eta = eta;

    const ConditionBundle condition;  // the analytic denoiser ignores conditions
    std::vector<double> sum(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> sum_sq(static_cast<std::size_t>(dim), 0.0);
    FrameSequence first_result;

    for (int k = 0; k < samples; ++k) {
        std::mt19937_64 data_rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(k)));
        std::mt19937_64 offset_rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(k) + 1));
        std::normal_distribution<double> normal(0.0, 1.0);

        std::vector<double> reference(static_cast<std::size_t>(dim));
        for (int d = 0; d < dim; ++d) {
            reference[static_cast<std::size_t>(d)] =
                mu[static_cast<std::size_t>(d)] + sigma * normal(data_rng);
        }
        FrameSequence x_T =
            start_latent_from_reference(reference, schedule, frames, data_rng);
        FrameSequence result = sliding_window_denoise(std::move(x_T), denoiser, schedule,
                                                      condition, sliding, ladder, offset_rng);
        if (k == 0) {
            first_result = result;
        }
        const auto frame0 = result.frame(0);
        for (int d = 0; d < dim; ++d) {
            sum[static_cast<std::size_t>(d)] += frame0[static_cast<std::size_t>(d)];
            sum_sq[static_cast<std::size_t>(d)] +=
                frame0[static_cast<std::size_t>(d)] * frame0[static_cast<std::size_t>(d)];
        }
    }

    const fs::path out_dir(options.out_dir);
    fs::create_directories(out_dir / "frames");
    for (int f = 0; f < frames; ++f) {
        Image frame_image(1, dim, 1);
        const auto values = first_result.frame(f);
        for (int d = 0; d < dim; ++d) {
            frame_image.at(0, d, 0) = static_cast<float>(
                std::clamp((values[static_cast<std::size_t>(d)] + 4.0) / 8.0, 0.0, 1.0));
        }
        save_png(out_dir / "frames" / frame_filename(f), frame_image);
    }

    std::ofstream manifest(out_dir / "manifest.txt");
    if (!manifest) {
        throw std::runtime_error("cannot write " + (out_dir / "manifest.txt").string());
    }
    manifest << "seed=" << seed << '\n'
             << "omega=" << omega << '\n'
             << "gamma=" << gamma << '\n'
             << "window=" << window << '\n'
             << "stride=" << stride << '\n'
             << "steps=" << steps << '\n'
             << "T=" << total_steps << '\n'
             << "frames=" << frames << '\n'
             << "samples=" << samples << '\n'
             << "eta=" << eta << '\n'
             << "sigma=" << sigma << '\n'
             << "denoiser=" << denoiser_kind << '\n';
    manifest << "mu=";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        manifest << (i > 0 ? "," : "") << mu[i];
    }
    manifest << '\n' << "ladder=" << join_ints(ladder) << '\n';

    for (int d = 0; d < dim; ++d) {
        const double mean = sum[static_cast<std::size_t>(d)] / samples;
        const double variance =
            samples > 1
                ? (sum_sq[static_cast<std::size_t>(d)] - samples * mean * mean) / (samples - 1)
                : 0.0;
        std::printf("dim %d: mean=%.6f var=%.6f (target mean=%.6f var=%.6f)\n", d, mean, variance,
                    mu[static_cast<std::size_t>(d)], sigma * sigma);
        manifest << "mean_" << d << '=' << mean << '\n';
        manifest << "var_" << d << '=' << variance << '\n';
    }
    if (!global.quiet) {
        std::printf("wrote %d frames and manifest -> %s\n", frames, options.out_dir.c_str());
    }
    return 0;
}

}  // namespace animkit::cli
