// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "animkit/image_io.hpp"
#include "animkit/keypoints.hpp"
#include "animkit/regional_loss.hpp"
#include "commands.hpp"

namespace animkit::cli {

namespace fs = std::filesystem;

int run_losses(const GlobalOptions& global, const LossesOptions& options) {
    const Image target = load_png(options.target_png);
    const Image predicted = load_png(options.predicted_png);
    if (!target.same_shape(predicted)) {
        std::fprintf(stderr, "error: target and predicted frames have different shapes\n");
        return 1;
    }
    const KeypointSequence sequence = load_keypoints_json(options.keypoints_json);
    const auto frame_it =
        std::find_if(sequence.frames.begin(), sequence.frames.end(),
                     [&](const KeypointFrame& f) { return f.frame_index == options.frame_index; });
    if (frame_it == sequence.frames.end()) {
        std::fprintf(stderr, "error: frame index %d not present in %s\n", options.frame_index,
                     options.keypoints_json.c_str());
        return 1;
    }
    const KeypointFrame& keypoints = *frame_it;

    const int h = target.height();
    const int w = target.width();
    const auto face_mask =
        region_mask_from_keypoints(keypoints, RegionKind::kFace, options.face_pad_ratio, h, w,
                                   options.confidence_threshold);
    const auto left_mask =
        region_mask_from_keypoints(keypoints, RegionKind::kLeftHand, options.hand_pad_ratio, h, w,
                                   options.confidence_threshold);
    const auto right_mask =
        region_mask_from_keypoints(keypoints, RegionKind::kRightHand, options.hand_pad_ratio, h,
                                   w, options.confidence_threshold);

    std::optional<FaceEmbedding> reference_embedding;
    std::optional<FaceEmbedding> predicted_embedding;
    if (!options.reference_png.empty()) {
        const auto face_box =
            region_bounds_from_keypoints(keypoints, RegionKind::kFace, options.face_pad_ratio, h,
                                         w, options.confidence_threshold);
        if (face_box.has_value()) {
            const Image reference = load_png(options.reference_png);
            if (!reference.same_shape(target)) {
                std::fprintf(stderr, "error: reference frame has a different shape\n");
                return 1;
            }
            FaceEmbedding ref_emb = grayscale_patch_embedding(crop(reference, *face_box));
            FaceEmbedding pre_emb = grayscale_patch_embedding(crop(predicted, *face_box));
            const auto nonzero = [](const FaceEmbedding& e) {
                return std::any_of(e.begin(), e.end(), [](double v) { return v != 0.0; });
            };
            if (nonzero(ref_emb) && nonzero(pre_emb)) {
                reference_embedding = std::move(ref_emb);
                predicted_embedding = std::move(pre_emb);
            }
        }
    }

    const RegionalLossBreakdown breakdown = regional_loss(
        target, predicted, face_mask.has_value() ? &*face_mask : nullptr,
        left_mask.has_value() ? &*left_mask : nullptr,
        right_mask.has_value() ? &*right_mask : nullptr,
        reference_embedding.has_value() ? &*reference_embedding : nullptr,
        predicted_embedding.has_value() ? &*predicted_embedding : nullptr);

    if (options.out_csv.empty()) {
        write_loss_csv_header(std::cout);
        write_loss_csv_row(std::cout, options.frame_index, breakdown);
    } else {
        const fs::path out_path(options.out_csv);
        if (out_path.has_parent_path()) {
            fs::create_directories(out_path.parent_path());
        }
        std::ofstream out(out_path);
        if (!out) {
            throw std::runtime_error("cannot write " + options.out_csv);
        }
        write_loss_csv_header(out);
        write_loss_csv_row(out, options.frame_index, breakdown);
        if (!global.quiet) {
            std::printf("wrote %s\n", options.out_csv.c_str());
        }
    }
    std::printf("total=%.12g\n", breakdown.total);
    return 0;
}

}  // namespace animkit::cli
