// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "animkit/image.hpp"
#include "animkit/keypoints.hpp"

namespace animkit {

/// Raised by masked_mse when the mask selects no pixels; distinct from a zero
/// loss so an empty region is never mistaken for a perfect match.
class EmptyMaskError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Binary H x W indicator gating a regional loss term.
struct RegionMask {
    RegionKind kind = RegionKind::kFace;
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> mask;  // 0/1, row-major

    std::uint8_t at(int y, int x) const {
        return mask[static_cast<std::size_t>(y) * width + x];
    }
    /// Number of selected pixels.
    std::size_t count() const;
};

/// Masked MSE of Eq.-style form: sum over masked pixels of the squared
/// channel differences, normalized by the mask pixel count (channels are
/// summed in the numerator, counted once in the denominator).
double masked_mse(const Image& target, const Image& predicted, const RegionMask& mask);

using FaceEmbedding = std::vector<double>;

/// 1 - cos(ref, pre); range [0, 2]. Zero-norm vectors and dimension
/// mismatches are rejected.
double cosine_loss(const FaceEmbedding& reference, const FaceEmbedding& predicted);

/// Axis-aligned bounding box of the region's keypoints above the confidence
/// threshold, expanded by pad_ratio * extent on each side and clamped to
/// image bounds. Returns nullopt when no keypoint of the region clears the
/// threshold.
std::optional<Rect> region_bounds_from_keypoints(
    const KeypointFrame& keypoints, RegionKind kind, double pad_ratio, int height, int width,
    double confidence_threshold = kDefaultConfidenceThreshold);

/// The region bounds rasterized as a binary mask; nullopt under the same
/// conditions as region_bounds_from_keypoints. Callers skip that loss term.
std::optional<RegionMask> region_mask_from_keypoints(
    const KeypointFrame& keypoints, RegionKind kind, double pad_ratio, int height, int width,
    double confidence_threshold = kDefaultConfidenceThreshold);

struct RegionalLossWeights {
    double face = 1.0;
    double hand = 1.0;
    double cosine = 1.0;
};

/// Per-term values; a disengaged optional marks a skipped (unavailable) term.
struct RegionalLossBreakdown {
    std::optional<double> face;
    std::optional<double> left_hand;
    std::optional<double> right_hand;
    std::optional<double> cosine;
    double total = 0.0;

    int available_terms() const;
};

/// total = w_face * L_face + w_hand * (L_left + L_right) + w_cos * L_cos over
/// the available terms. Null masks/embeddings skip their term; at least one
/// term must be computable.
RegionalLossBreakdown regional_loss(const Image& target, const Image& predicted,
                                    const RegionMask* face_mask, const RegionMask* left_hand_mask,
                                    const RegionMask* right_hand_mask,
                                    const FaceEmbedding* reference_embedding,
                                    const FaceEmbedding* predicted_embedding,
                                    const RegionalLossWeights& weights = {});

/// Deterministic stand-in embedding provider: area-averages the crop to a
/// 16 x 16 grayscale patch, flattens to d = 256, L2-normalizes. An all-black
/// crop yields the zero vector (invalid for cosine_loss; callers check).
FaceEmbedding grayscale_patch_embedding(const Image& face_crop);

/// CSV row `frame,face,left_hand,right_hand,cos,total`; skipped terms emit
/// blank cells. `write_loss_csv_header` emits the header line.
void write_loss_csv_header(std::ostream& out);
void write_loss_csv_row(std::ostream& out, int frame, const RegionalLossBreakdown& breakdown);

}  // namespace animkit
