// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "animkit/driving_signal.hpp"
#include "animkit/image_io.hpp"
#include "animkit/keypoints.hpp"
#include "animkit/regional_loss.hpp"
#include "commands.hpp"

namespace animkit::cli {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> sorted_pngs(const fs::path& dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("not a directory: " + dir.string());
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

struct FrameOutput {
    Image pose_map;
    BlurCondition left;
    BlurCondition right;
    std::optional<RegionMask> face_mask;
    std::optional<RegionMask> left_hand_mask;
    std::optional<RegionMask> right_hand_mask;
};

}  // namespace

int run_preprocess(const GlobalOptions& global, const PreprocessOptions& options) {
    const KeypointSequence sequence = load_keypoints_json(options.keypoints_json);
    const std::vector<fs::path> frames = sorted_pngs(options.frames_dir);
    if (frames.size() != sequence.frames.size()) {
        std::fprintf(stderr, "error: frame count %zu does not match keypoint frame count %zu\n",
                     frames.size(), sequence.frames.size());
        return 1;
    }
    if (frames.empty()) {
        std::fprintf(stderr, "error: no PNG frames in %s\n", options.frames_dir.c_str());
        return 1;
    }

    const fs::path out_dir(options.out_dir);
    fs::create_directories(out_dir / "pose");
    fs::create_directories(out_dir / "masks");

    const OverlayScale scale{options.v_max, options.s_max};
    const std::size_t n = frames.size();
    std::vector<FrameOutput> outputs(n);

    auto process_frame = [&](std::size_t i) {
        const Image frame = load_png(frames[i]);
        const KeypointFrame& kps = sequence.frames[i];
        const KeypointFrame* prev = i > 0 ? &sequence.frames[i - 1] : nullptr;
        FrameOutput& out = outputs[i];

        out.pose_map = render_pose_map(kps, frame.height(), frame.width(),
                                       options.confidence_threshold);
        for (Hand hand : {Hand::kLeft, Hand::kRight}) {
            BlurCondition cond;
            cond.hand = hand;
            std::optional<Vec2> moved;
            if (prev != nullptr) {
                moved = movement_vector(kps, *prev, hand, options.confidence_threshold);
            }
            const auto hand_crop = crop_hand(frame, kps, hand, options.hand_pad_ratio,
                                             options.confidence_threshold);
            if (moved.has_value() && hand_crop.has_value() && hand_crop->crop.height() >= 3 &&
                hand_crop->crop.width() >= 3) {
                cond.vx = moved->x;
                cond.vy = moved->y;
                cond.sharpness = sharpness_score(hand_crop->crop);
                cond.valid = true;
                out.pose_map = overlay_blur_condition(out.pose_map, hand_crop->bbox, cond, scale);
            }
            (hand == Hand::kLeft ? out.left : out.right) = cond;
        }
        out.face_mask =
            region_mask_from_keypoints(kps, RegionKind::kFace, options.face_pad_ratio,
                                       frame.height(), frame.width(),
                                       options.confidence_threshold);
        out.left_hand_mask =
            region_mask_from_keypoints(kps, RegionKind::kLeftHand, options.hand_pad_ratio,
                                       frame.height(), frame.width(),
                                       options.confidence_threshold);
        out.right_hand_mask =
            region_mask_from_keypoints(kps, RegionKind::kRightHand, options.hand_pad_ratio,
                                       frame.height(), frame.width(),
                                       options.confidence_threshold);
    };

    int workers = global.workers > 0 ? global.workers
                                     : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, static_cast<int>(n));
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                process_frame(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& thread : pool) {
        thread.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    // Output writing is ordered by frame index regardless of worker count.
    std::ofstream blur_csv(out_dir / "blur.csv");
    if (!blur_csv) {
        throw std::runtime_error("cannot write " + (out_dir / "blur.csv").string());
    }
    write_blur_csv_header(blur_csv);
    for (std::size_t i = 0; i < n; ++i) {
        const FrameOutput& out = outputs[i];
        const int index = sequence.frames[i].frame_index;
        save_png(out_dir / "pose" / frame_filename(index), out.pose_map);
        write_blur_csv_row(blur_csv, index, out.left);
        write_blur_csv_row(blur_csv, index, out.right);
        auto save_mask = [&](const std::optional<RegionMask>& mask, const char* suffix) {
            if (!mask.has_value()) {
                return;
            }
            char name[64];
            std::snprintf(name, sizeof(name), "%06d_%s.png", index, suffix);
            save_png_bilevel(out_dir / "masks" / name, mask->height, mask->width, mask->mask);
        };
        save_mask(out.face_mask, "face");
        save_mask(out.left_hand_mask, "left_hand");
        save_mask(out.right_hand_mask, "right_hand");
    }

    if (!global.quiet) {
        std::printf("preprocessed %zu frames -> %s\n", n, options.out_dir.c_str());
    }
    return 0;
}

}  // namespace animkit::cli
