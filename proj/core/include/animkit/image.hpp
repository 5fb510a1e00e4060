// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace animkit {

/// Row-major H x W x C tensor of 32-bit floats. Images keep values in [0, 1];
/// latents may hold arbitrary reals.
class Image {
public:
    Image() = default;
    Image(int height, int width, int channels, float fill = 0.0f);

    int height() const { return height_; }
    int width() const { return width_; }
    int channels() const { return channels_; }
    bool empty() const { return pixels_.empty(); }
    std::size_t size() const { return pixels_.size(); }

    float& at(int y, int x, int c) {
        return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    float at(int y, int x, int c) const {
        return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }

    float* data() { return pixels_.data(); }
    const float* data() const { return pixels_.data(); }
    std::span<float> pixels() { return pixels_; }
    std::span<const float> pixels() const { return pixels_; }

    bool same_shape(const Image& other) const {
        return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
    }
    bool operator==(const Image& other) const = default;

private:
    int height_ = 0;
    int width_ = 0;
    int channels_ = 0;
    std::vector<float> pixels_;
};

/// Axis-aligned pixel rectangle with inclusive corners [x0..x1] x [y0..y1].
struct Rect {
    int x0 = 0;
    int y0 = 0;
    int x1 = -1;
    int y1 = -1;

    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
    bool valid() const { return x1 >= x0 && y1 >= y0; }
    bool operator==(const Rect&) const = default;
};

/// Luminance conversion with 0.299/0.587/0.114 weights. Single-channel input
/// is returned unchanged; other channel counts are rejected.
Image to_grayscale(const Image& image);

/// Separable Gaussian blur, kernel radius ceil(3*sigma), clamp-to-edge border.
/// sigma <= 0 returns the input unchanged.
Image gaussian_blur(const Image& image, double sigma);

/// Copies the sub-image covered by `box` (clamped to bounds beforehand by the
/// caller; out-of-range boxes are rejected).
Image crop(const Image& image, const Rect& box);

/// Mirrors the image left-right: out(y, x) = in(y, W-1-x).
Image flip_image_horizontal(const Image& image);

}  // namespace animkit
