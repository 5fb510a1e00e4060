// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "animkit/image.hpp"

namespace animkit {

/// Mean absolute per-element difference over H*W*C. Values expected in [0,1].
double l1_error(const Image& a, const Image& b);

/// 10 * log10(1 / MSE) with MSE the global mean squared error over all
/// elements (MAX = 1). Identical inputs return +infinity.
double psnr(const Image& a, const Image& b);

/// Mean local SSIM with an 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, L = 1, windows fully inside the image, channels averaged.
/// Requires dims >= 11 x 11.
double ssim(const Image& a, const Image& b);

/// Centered zero-padding to max(H, W) on both dims; odd remainders put the
/// extra row/column at the bottom/right.
Image pad_to_square(const Image& image);

struct MetricRow {
    std::string name;
    double l1 = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
};

/// CSV report `frame,l1,psnr,ssim` plus a final `mean` summary row. Infinite
/// PSNR serializes as the literal `inf`.
void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows);

}  // namespace animkit
