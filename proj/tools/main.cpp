// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace cli = animkit::cli;

int main(int argc, char** argv) {
    CLI::App app{"animkit: diffusion animation scheduling, sampling, pose conditioning and metrics"};
    app.require_subcommand(1);

    cli::GlobalOptions global;
    app.add_option("--seed", global.seed, "Seed for all randomness")->capture_default_str();
    app.add_option("--workers", global.workers, "Worker threads, 0 = logical cores")
        ->capture_default_str();
    app.add_flag("--quiet", global.quiet, "Suppress progress output");

    cli::ScheduleOptions schedule_options;
    CLI::App* schedule = app.add_subcommand(
        "schedule", "Write the default and SNR-shifted noise schedule tables as CSV");
    schedule->add_option("--T", schedule_options.steps, "Diffusion step count")->required();
    schedule->add_option("--gamma", schedule_options.gamma, "SNR shift factor in (0, 1]")
        ->required();
    schedule->add_option("--out", schedule_options.out_dir, "Output directory")
        ->capture_default_str();

    cli::PreprocessOptions preprocess_options;
    CLI::App* preprocess = app.add_subcommand(
        "preprocess", "Render pose maps with motion-blur overlays, region masks and a blur CSV");
    preprocess->add_option("--frames", preprocess_options.frames_dir, "Directory of frame PNGs")
        ->required();
    preprocess
        ->add_option("--keypoints", preprocess_options.keypoints_json, "Keypoint JSON document")
        ->required();
    preprocess->add_option("--out", preprocess_options.out_dir, "Output directory")->required();
    preprocess->add_option("--v-max", preprocess_options.v_max, "Movement normalization ceiling")
        ->capture_default_str();
    preprocess->add_option("--s-max", preprocess_options.s_max, "Sharpness normalization ceiling")
        ->capture_default_str();
    preprocess
        ->add_option("--hand-pad", preprocess_options.hand_pad_ratio, "Hand box padding ratio")
        ->capture_default_str();
    preprocess
        ->add_option("--face-pad", preprocess_options.face_pad_ratio, "Face box padding ratio")
        ->capture_default_str();
    preprocess
        ->add_option("--threshold", preprocess_options.confidence_threshold,
                     "Keypoint confidence threshold")
        ->capture_default_str();

    cli::SampleOptions sample_options;
    CLI::App* sample = app.add_subcommand(
        "sample", "Run sliding-window denoising with the analytic Gaussian denoiser");
    sample->add_option("--config", sample_options.config_file, "Flat key=value config file")
        ->required();
    sample->add_option("--out", sample_options.out_dir, "Output directory")->required();

    cli::MetricsOptions metrics_options;
    CLI::App* metrics =
        app.add_subcommand("metrics", "Per-frame L1/PSNR/SSIM between two PNG directories");
    metrics->add_option("--a", metrics_options.dir_a, "First directory")->required();
    metrics->add_option("--b", metrics_options.dir_b, "Second directory")->required();
    metrics->add_option("--out", metrics_options.out_csv, "Output CSV path")->required();

    cli::LossesOptions losses_options;
    CLI::App* losses = app.add_subcommand(
        "losses", "Regional loss breakdown between a target and a predicted frame");
    losses->add_option("--target", losses_options.target_png, "Target frame PNG")->required();
    losses->add_option("--pred", losses_options.predicted_png, "Predicted frame PNG")->required();
    losses->add_option("--keypoints", losses_options.keypoints_json, "Keypoint JSON document")
        ->required();
    losses->add_option("--frame", losses_options.frame_index, "Frame index within the document")
        ->capture_default_str();
    losses->add_option("--ref", losses_options.reference_png,
                       "Reference image enabling the embedding cosine term");
    losses->add_option("--out", losses_options.out_csv, "Output CSV path (stdout when omitted)");

    // Global flags remain valid after the subcommand name.
    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (schedule->parsed()) {
            return cli::run_schedule(global, schedule_options);
        }
        if (preprocess->parsed()) {
            return cli::run_preprocess(global, preprocess_options);
        }
        if (sample->parsed()) {
            return cli::run_sample(global, sample_options);
        }
        if (metrics->parsed()) {
            return cli::run_metrics(global, metrics_options);
        }
        if (losses->parsed()) {
            return cli::run_losses(global, losses_options);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
