// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include "animkit/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace animkit {

Image::Image(int height, int width, int channels, float fill)
    : height_(height), width_(width), channels_(channels) {
    if (height < 0 || width < 0 || channels < 0) {
        throw std::invalid_argument("Image: negative dimension");
    }
    pixels_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

Image to_grayscale(const Image& image) {
    if (image.channels() == 1) {
        return image;
    }
    if (image.channels() != 3) {
        throw std::invalid_argument("to_grayscale: expected 1 or 3 channels");
    }
    Image gray(image.height(), image.width(), 1);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            gray.at(y, x, 0) = 0.299f * image.at(y, x, 0) + 0.587f * image.at(y, x, 1) +
                               0.114f * image.at(y, x, 2);
        }
    }
    return gray;
}

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
        kernel[i + radius] = w;
        sum += w;
    }
    for (double& w : kernel) {
        w /= sum;
    }
    return kernel;
}

}  // namespace

Image gaussian_blur(const Image& image, double sigma) {
    if (sigma <= 0.0 || image.empty()) {
        return image;
    }
    const std::vector<double> kernel = gaussian_kernel(sigma);
    const int radius = static_cast<int>(kernel.size() / 2);
    const int h = image.height();
    const int w = image.width();
    const int c = image.channels();

    Image horizontal(h, w, c);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int ch = 0; ch < c; ++ch) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k) {
                    const int xx = std::clamp(x + k, 0, w - 1);
                    acc += kernel[k + radius] * image.at(y, xx, ch);
                }
                horizontal.at(y, x, ch) = static_cast<float>(acc);
            }
        }
    }
    Image out(h, w, c);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int ch = 0; ch < c; ++ch) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k) {
                    const int yy = std::clamp(y + k, 0, h - 1);
                    acc += kernel[k + radius] * horizontal.at(yy, x, ch);
                }
                out.at(y, x, ch) = static_cast<float>(acc);
            }
        }
    }
    return out;
}

Image crop(const Image& image, const Rect& box) {
    if (!box.valid() || box.x0 < 0 || box.y0 < 0 || box.x1 >= image.width() ||
        box.y1 >= image.height()) {
        throw std::invalid_argument("crop: box out of image bounds");
    }
    Image out(box.height(), box.width(), image.channels());
    for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) {
            for (int c = 0; c < image.channels(); ++c) {
                out.at(y, x, c) = image.at(box.y0 + y, box.x0 + x, c);
            }
        }
    }
    return out;
}

Image flip_image_horizontal(const Image& image) {
    Image out(image.height(), image.width(), image.channels());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            for (int c = 0; c < image.channels(); ++c) {
                out.at(y, x, c) = image.at(y, image.width() - 1 - x, c);
            }
        }
    }
    return out;
}

}  // namespace animkit
