// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace animkit::cli {

struct GlobalOptions {
    std::uint64_t seed = 0;
    int workers = 0;  // 0 = logical cores
    bool quiet = false;
};

struct ScheduleOptions {
    int steps = 1000;
    double gamma = 0.5;
    std::string out_dir = ".";
};

struct PreprocessOptions {
    std::string frames_dir;
    std::string keypoints_json;
    std::string out_dir;
    double v_max = 32.0;
    double s_max = 2000.0;
    double hand_pad_ratio = 0.35;
    double face_pad_ratio = 0.25;
    double confidence_threshold = 0.3;
};

struct SampleOptions {
    std::string config_file;
    std::string out_dir;
};

struct MetricsOptions {
    std::string dir_a;
    std::string dir_b;
    std::string out_csv;
};

struct LossesOptions {
    std::string target_png;
    std::string predicted_png;
    std::string keypoints_json;
    int frame_index = 0;
    std::string reference_png;  // optional; enables the cosine term
    std::string out_csv;        // optional; stdout when empty
    double face_pad_ratio = 0.25;
    double hand_pad_ratio = 0.35;
    double confidence_threshold = 0.3;
};

int run_schedule(const GlobalOptions& global, const ScheduleOptions& options);
int run_preprocess(const GlobalOptions& global, const PreprocessOptions& options);
int run_sample(const GlobalOptions& global, const SampleOptions& options);
int run_metrics(const GlobalOptions& global, const MetricsOptions& options);
int run_losses(const GlobalOptions& global, const LossesOptions& options);

/// splitmix64 stream derivation so per-sample draws are independent of
/// window/stride settings.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace animkit::cli
