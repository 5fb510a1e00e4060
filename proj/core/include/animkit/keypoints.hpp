// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace animkit {

// COCO-WholeBody layout: 17 body, 6 feet, 68 face, 21 per hand.
inline constexpr int kKeypointCount = 133;
inline constexpr int kBodyBegin = 0;
inline constexpr int kBodyEnd = 17;
inline constexpr int kFootBegin = 17;
inline constexpr int kFootEnd = 23;
inline constexpr int kFaceBegin = 23;
inline constexpr int kFaceEnd = 91;
inline constexpr int kLeftHandBegin = 91;
inline constexpr int kLeftHandEnd = 112;
inline constexpr int kRightHandBegin = 112;
inline constexpr int kRightHandEnd = 133;
inline constexpr int kHandPointCount = 21;

inline constexpr double kDefaultConfidenceThreshold = 0.3;

enum class Hand { kLeft, kRight };
enum class RegionKind { kFace, kLeftHand, kRightHand };

const char* to_string(Hand hand);
const char* to_string(RegionKind kind);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Vec2&) const = default;
};

struct Keypoint {
    double x = 0.0;
    double y = 0.0;
    double confidence = 0.0;
    bool operator==(const Keypoint&) const = default;
};

/// Per-frame full-body 2D keypoints in COCO-WholeBody order.
struct KeypointFrame {
    int frame_index = 0;
    int width = 0;   // source frame dims, px
    int height = 0;
    std::array<Keypoint, kKeypointCount> points{};

    std::span<const Keypoint> hand(Hand hand) const;
    std::span<const Keypoint> region(RegionKind kind) const;
    bool operator==(const KeypointFrame&) const = default;
};

struct KeypointSequence {
    std::string video;
    int width = 0;
    int height = 0;
    std::vector<KeypointFrame> frames;
};

/// Ingests the per-video JSON document:
///   { "video": str, "width": int, "height": int,
///     "frames": [ { "index": int, "points": [[x,y,conf] x 133] } ] }
KeypointSequence load_keypoints_json(const std::filesystem::path& path);
void save_keypoints_json(const std::filesystem::path& path, const KeypointSequence& sequence);

/// Left/right symmetry permutation: hands swap as blocks, paired body and
/// face points swap, midline points map to themselves. Involution.
const std::array<int, kKeypointCount>& horizontal_swap_table();

/// Mirror about the vertical axis of a frame `width` px wide: x -> W-1-x plus
/// the symmetry index swap. Confidence values travel with their points.
KeypointFrame flip_keypoints_horizontal(const KeypointFrame& frame);

}  // namespace animkit
