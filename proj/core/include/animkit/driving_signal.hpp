// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <utility>

#include "animkit/image.hpp"
#include "animkit/keypoints.hpp"

namespace animkit {

/// Per-frame, per-hand motion-blur descriptor: movement vector in px/frame
/// and sharpness (variance of Laplacian). valid == false zeroes both and
/// excludes the record from overlays.
struct BlurCondition {
    Hand hand = Hand::kLeft;
    double vx = 0.0;
    double vy = 0.0;
    double sharpness = 0.0;
    bool valid = false;

    double speed() const;
};

/// Mean over the hand's 21 keypoints of (curr - prev) positions. Both frames
/// must have every hand keypoint above the confidence threshold; otherwise
/// the hand is treated as unavailable.
std::optional<Vec2> movement_vector(const KeypointFrame& curr, const KeypointFrame& prev,
                                    Hand hand,
                                    double confidence_threshold = kDefaultConfidenceThreshold);

struct HandCrop {
    Image crop;
    Rect bbox;  // placement of the crop within the source frame
};

/// Square crop around the padded hand bounding box, clamped to image bounds
/// (the crop shrinks at edges). pad_ratio adds pad_ratio * extent per side.
std::optional<HandCrop> crop_hand(const Image& image, const KeypointFrame& keypoints, Hand hand,
                                  double pad_ratio = 0.35,
                                  double confidence_threshold = kDefaultConfidenceThreshold);

/// Variance of the 5-point Laplacian [[0,1,0],[1,-4,1],[0,1,0]] response over
/// the valid interior (1-px border excluded) of the grayscale crop.
/// Requires the crop to be at least 3 x 3.
double sharpness_score(const Image& crop);

/// Deterministic skeleton render on a black canvas: thick body bones with the
/// conventional limb palette, thin hand bones, face dots. Keypoints below the
/// confidence threshold are omitted.
Image render_pose_map(const KeypointFrame& keypoints, int height, int width,
                      double confidence_threshold = kDefaultConfidenceThreshold);

// Rasterization radii used by render_pose_map (px).
inline constexpr double kBodyBoneRadius = 2.0;
inline constexpr double kHandBoneRadius = 0.75;
inline constexpr double kFaceDotRadius = 1.0;

/// Normalization ceilings for the overlay channel encoding.
struct OverlayScale {
    double v_max = 32.0;    // px/frame
    double s_max = 2000.0;  // variance of Laplacian
};

/// Fills a disc centered on the hand bbox (radius = half the bbox diagonal)
/// with R = clamp01(0.5 + vx/(2 v_max)), G = clamp01(0.5 + vy/(2 v_max)),
/// B = clamp01(s/s_max). Pixels outside the disc are untouched; an invalid
/// condition returns the pose map unchanged.
Image overlay_blur_condition(const Image& pose_map, const Rect& bbox, const BlurCondition& cond,
                             const OverlayScale& scale = {});

/// Mirrors the image and keypoints as a pair; an involution.
std::pair<Image, KeypointFrame> flip_horizontal(const Image& image, const KeypointFrame& keypoints);

/// Full per-hand pipeline step: movement vector from the previous frame plus
/// crop sharpness. Missing prev frame or a hand below threshold in either
/// frame or in the crop yields valid == false.
BlurCondition compute_blur_condition(const Image& frame, const KeypointFrame& curr,
                                     const KeypointFrame* prev, Hand hand,
                                     double pad_ratio = 0.35,
                                     double confidence_threshold = kDefaultConfidenceThreshold);

/// CSV sidecar `frame,hand,vx,vy,speed,sharpness,valid`.
void write_blur_csv_header(std::ostream& out);
void write_blur_csv_row(std::ostream& out, int frame, const BlurCondition& cond);

}  // namespace animkit
