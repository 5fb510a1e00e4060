// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include "animkit/regional_loss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace animkit {

std::size_t RegionMask::count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

double masked_mse(const Image& target, const Image& predicted, const RegionMask& mask) {
    if (!target.same_shape(predicted)) {
        throw std::invalid_argument("masked_mse: image shape mismatch");
    }
    if (mask.height != target.height() || mask.width != target.width()) {
        throw std::invalid_argument("masked_mse: mask shape mismatch");
    }
    double numerator = 0.0;
    std::size_t selected = 0;
    for (int y = 0; y < target.height(); ++y) {
        for (int x = 0; x < target.width(); ++x) {
            if (!mask.at(y, x)) {
                continue;
            }
            ++selected;
            for (int c = 0; c < target.channels(); ++c) {
                const double d = static_cast<double>(target.at(y, x, c)) - predicted.at(y, x, c);
                numerator += d * d;
            }
        }
    }
    if (selected == 0) {
        throw EmptyMaskError("masked_mse: mask selects no pixels");
    }
    return numerator / static_cast<double>(selected);
}

double cosine_loss(const FaceEmbedding& reference, const FaceEmbedding& predicted) {
    if (reference.size() != predicted.size() || reference.empty()) {
        throw std::invalid_argument("cosine_loss: dimension mismatch");
    }
    double dot = 0.0;
    double norm_ref = 0.0;
    double norm_pre = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        dot += reference[i] * predicted[i];
        norm_ref += reference[i] * reference[i];
        norm_pre += predicted[i] * predicted[i];
    }
    if (norm_ref == 0.0 || norm_pre == 0.0) {
        throw std::invalid_argument("cosine_loss: zero-norm embedding");
    }
    // sqrt of the product keeps identical inputs at exactly 0; the clamp
    // holds the [0, 2] range against last-ulp drift.
    const double cosine = std::clamp(dot / std::sqrt(norm_ref * norm_pre), -1.0, 1.0);
    return 1.0 - cosine;
}

std::optional<Rect> region_bounds_from_keypoints(const KeypointFrame& keypoints, RegionKind kind,
                                                 double pad_ratio, int height, int width,
                                                 double confidence_threshold) {
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    bool any = false;
    for (const Keypoint& p : keypoints.region(kind)) {
        if (p.confidence < confidence_threshold) {
            continue;
        }
        if (!any) {
            min_x = max_x = p.x;
            min_y = max_y = p.y;
            any = true;
        } else {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    if (!any) {
        return std::nullopt;
    }
    const double pad_x = pad_ratio * (max_x - min_x);
    const double pad_y = pad_ratio * (max_y - min_y);
    Rect box;
    box.x0 = std::clamp(static_cast<int>(std::floor(min_x - pad_x)), 0, width - 1);
    box.x1 = std::clamp(static_cast<int>(std::ceil(max_x + pad_x)), 0, width - 1);
    box.y0 = std::clamp(static_cast<int>(std::floor(min_y - pad_y)), 0, height - 1);
    box.y1 = std::clamp(static_cast<int>(std::ceil(max_y + pad_y)), 0, height - 1);
    return box;
}

std::optional<RegionMask> region_mask_from_keypoints(const KeypointFrame& keypoints,
                                                     RegionKind kind, double pad_ratio, int height,
                                                     int width, double confidence_threshold) {
    const auto box =
        region_bounds_from_keypoints(keypoints, kind, pad_ratio, height, width,
                                     confidence_threshold);
    if (!box.has_value()) {
        return std::nullopt;
    }
    RegionMask mask;
    mask.kind = kind;
    mask.height = height;
    mask.width = width;
    mask.mask.assign(static_cast<std::size_t>(height) * width, 0);
    for (int y = box->y0; y <= box->y1; ++y) {
        std::fill_n(mask.mask.begin() + static_cast<std::ptrdiff_t>(y) * width + box->x0,
                    box->width(), std::uint8_t{1});
    }
    return mask;
}

int RegionalLossBreakdown::available_terms() const {
    return static_cast<int>(face.has_value()) + static_cast<int>(left_hand.has_value()) +
           static_cast<int>(right_hand.has_value()) + static_cast<int>(cosine.has_value());
}

RegionalLossBreakdown regional_loss(const Image& target, const Image& predicted,
                                    const RegionMask* face_mask, const RegionMask* left_hand_mask,
                                    const RegionMask* right_hand_mask,
                                    const FaceEmbedding* reference_embedding,
                                    const FaceEmbedding* predicted_embedding,
                                    const RegionalLossWeights& weights) {
    RegionalLossBreakdown breakdown;
    if (face_mask != nullptr) {
        breakdown.face = masked_mse(target, predicted, *face_mask);
    }
    if (left_hand_mask != nullptr) {
        breakdown.left_hand = masked_mse(target, predicted, *left_hand_mask);
    }
    if (right_hand_mask != nullptr) {
        breakdown.right_hand = masked_mse(target, predicted, *right_hand_mask);
    }
    if (reference_embedding != nullptr && predicted_embedding != nullptr) {
        breakdown.cosine = cosine_loss(*reference_embedding, *predicted_embedding);
    }
    if (breakdown.available_terms() == 0) {
        throw std::invalid_argument("regional_loss: no computable terms");
    }
    breakdown.total = weights.face * breakdown.face.value_or(0.0) +
                      weights.hand * (breakdown.left_hand.value_or(0.0) +
                                      breakdown.right_hand.value_or(0.0)) +
                      weights.cosine * breakdown.cosine.value_or(0.0);
    return breakdown;
}

FaceEmbedding grayscale_patch_embedding(const Image& face_crop) {
    constexpr int kPatch = 16;
    if (face_crop.empty()) {
        throw std::invalid_argument("grayscale_patch_embedding: empty crop");
    }
    const Image gray = to_grayscale(face_crop);
    FaceEmbedding embedding(kPatch * kPatch, 0.0);
    const int h = gray.height();
    const int w = gray.width();
    for (int i = 0; i < kPatch; ++i) {
        int r0 = i * h / kPatch;
        int r1 = std::max((i + 1) * h / kPatch, r0 + 1);
        r1 = std::min(r1, h);
        r0 = std::min(r0, r1 - 1);
        for (int j = 0; j < kPatch; ++j) {
            int c0 = j * w / kPatch;
            int c1 = std::max((j + 1) * w / kPatch, c0 + 1);
            c1 = std::min(c1, w);
            c0 = std::min(c0, c1 - 1);
            double acc = 0.0;
            for (int y = r0; y < r1; ++y) {
                for (int x = c0; x < c1; ++x) {
                    acc += gray.at(y, x, 0);
                }
            }
            embedding[static_cast<std::size_t>(i) * kPatch + j] =
                acc / (static_cast<double>(r1 - r0) * (c1 - c0));
        }
    }
    const double norm = std::sqrt(
        std::inner_product(embedding.begin(), embedding.end(), embedding.begin(), 0.0));
    if (norm > 0.0) {
        for (double& v : embedding) {
            v /= norm;
        }
    }
    return embedding;
}

namespace {

void write_optional_cell(std::ostream& out, const std::optional<double>& value) {
    if (value.has_value()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", *value);
        out << buf;
    }
}

}  // namespace

void write_loss_csv_header(std::ostream& out) {
    out << "frame,face,left_hand,right_hand,cos,total\n";
}

void write_loss_csv_row(std::ostream& out, int frame, const RegionalLossBreakdown& breakdown) {
    out << frame << ',';
    write_optional_cell(out, breakdown.face);
    out << ',';
    write_optional_cell(out, breakdown.left_hand);
    out << ',';
    write_optional_cell(out, breakdown.right_hand);
    out << ',';
    write_optional_cell(out, breakdown.cosine);
    char buf[64];
    std::snprintf(buf, sizeof(buf), ",%.12g\n", breakdown.total);
    out << buf;
}

}  // namespace animkit
