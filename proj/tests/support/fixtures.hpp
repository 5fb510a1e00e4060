// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "animkit/image.hpp"
#include "animkit/image_io.hpp"
#include "animkit/keypoints.hpp"

namespace animkit::testing {

inline constexpr int kFixtureFrames = 10;
inline constexpr int kFixtureWidth = 128;
inline constexpr int kFixtureHeight = 96;
inline constexpr int kFixtureOccludedFrame = 3;  // left hand drops below threshold here

inline double hash_noise(int x, int y, int frame) {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(frame) + 1);
    h ^= static_cast<std::uint64_t>(x) * 0xBF58476D1CE4E5B9ULL;
    h ^= static_cast<std::uint64_t>(y) * 0x94D049BB133111EBULL;
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 32;
    return static_cast<double>(h % 4096) / 4095.0;
}

/// Left hand translates by (2, 1) px per frame; the right hand stays put.
inline Vec2 left_hand_origin(int frame) {
    return {26.0 + 2.0 * frame, 52.0 + 1.0 * frame};
}

inline Vec2 right_hand_origin(int) {
    return {88.0, 56.0};
}

inline KeypointFrame fixture_keypoints(int frame) {
    KeypointFrame kps;
    kps.frame_index = frame;
    kps.width = kFixtureWidth;
    kps.height = kFixtureHeight;

    auto set = [&kps](int i, double x, double y, double conf = 0.9) {
        kps.points[static_cast<std::size_t>(i)] = {x, y, conf};
    };
    // Body: a standing figure.
    set(0, 64, 16);            // nose
    set(1, 61, 14);            // eyes
    set(2, 67, 14);
    set(3, 58, 16);            // ears
    set(4, 70, 16);
    set(5, 50, 30);            // shoulders
    set(6, 78, 30);
    set(7, 42, 44);            // elbows
    set(8, 86, 44);
    set(9, 36, 56);            // wrists
    set(10, 92, 56);
    set(11, 56, 58);           // hips
    set(12, 72, 58);
    set(13, 54, 74);           // knees
    set(14, 74, 74);
    set(15, 54, 88);           // ankles
    set(16, 74, 88);
    // Feet.
    set(17, 51, 92);
    set(18, 49, 91);
    set(19, 56, 92);
    set(20, 77, 92);
    set(21, 79, 91);
    set(22, 72, 92);
    // Face: an ellipse of 68 points around the nose, snapped to a quarter-px
    // grid so mirrored coordinates stay exactly representable.
    for (int i = 0; i < 68; ++i) {
        const double angle = 2.0 * 3.14159265358979323846 * i / 68.0;
        const double fx = std::round((64.0 + 6.0 * std::cos(angle)) * 4.0) / 4.0;
        const double fy = std::round((17.0 + 7.0 * std::sin(angle)) * 4.0) / 4.0;
        set(kFaceBegin + i, fx, fy);
    }
    // Hands: 5x5-ish grids slightly larger than 3 px so crops are usable.
    const Vec2 left = left_hand_origin(frame);
    const Vec2 right = right_hand_origin(frame);
    const double left_conf = frame == kFixtureOccludedFrame ? 0.05 : 0.9;
    for (int i = 0; i < kHandPointCount; ++i) {
        const double dx = (i % 5) * 2.5;
        const double dy = (i / 5) * 2.5;
        set(kLeftHandBegin + i, left.x + dx, left.y + dy, left_conf);
        set(kRightHandBegin + i, right.x + dx, right.y + dy, 0.9);
    }
    return kps;
}

inline KeypointSequence fixture_sequence() {
    KeypointSequence seq;
    seq.video = "fixture";
    seq.width = kFixtureWidth;
    seq.height = kFixtureHeight;
    for (int f = 0; f < kFixtureFrames; ++f) {
        seq.frames.push_back(fixture_keypoints(f));
    }
    return seq;
}

/// Gradient background with textured discs at both hand positions.
inline Image fixture_frame(int frame) {
    Image img(kFixtureHeight, kFixtureWidth, 3);
    for (int y = 0; y < kFixtureHeight; ++y) {
        for (int x = 0; x < kFixtureWidth; ++x) {
            img.at(y, x, 0) = static_cast<float>(0.2 + 0.5 * x / kFixtureWidth);
            img.at(y, x, 1) = static_cast<float>(0.2 + 0.5 * y / kFixtureHeight);
            img.at(y, x, 2) = static_cast<float>(0.3 + 0.02 * frame);
        }
    }
    const Vec2 centers[] = {left_hand_origin(frame), right_hand_origin(frame)};
    for (const Vec2& c : centers) {
        for (int y = 0; y < kFixtureHeight; ++y) {
            for (int x = 0; x < kFixtureWidth; ++x) {
                const double cx = c.x + 5.0;
                const double cy = c.y + 5.0;
                if (std::hypot(x - cx, y - cy) <= 10.0) {
                    const float v = static_cast<float>(hash_noise(x, y, frame));
                    img.at(y, x, 0) = v;
                    img.at(y, x, 1) = 1.0f - v;
                    img.at(y, x, 2) = v * 0.5f;
                }
            }
        }
    }
    return img;
}

/// Writes frames/%06d.png and keypoints.json under `root`.
inline void write_fixture_clip(const std::filesystem::path& root) {
    std::filesystem::create_directories(root / "frames");
    for (int f = 0; f < kFixtureFrames; ++f) {
        save_png(root / "frames" / frame_filename(f), fixture_frame(f));
    }
    save_keypoints_json(root / "keypoints.json", fixture_sequence());
}

}  // namespace animkit::testing
