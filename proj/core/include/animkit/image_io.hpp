// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "animkit/image.hpp"

namespace animkit {

/// Decodes a PNG into a float image in [0, 1]. Grayscale stays single
/// channel; palette/RGB(A) decode to 3 channels (alpha dropped); 16-bit
/// depth is reduced to 8.
Image load_png(const std::filesystem::path& path);

/// Encodes an 8-bit PNG: 1 channel as grayscale, 3 as RGB. Values are
/// clamped to [0, 1] and rounded to 255 steps. Deterministic byte output.
void save_png(const std::filesystem::path& path, const Image& image);

/// Encodes a 1-bit grayscale PNG from a row-major 0/1 buffer.
void save_png_bilevel(const std::filesystem::path& path, int height, int width,
                      const std::vector<std::uint8_t>& mask);

/// Zero-padded frame filename `%06d.png`.
std::string frame_filename(int index);

}  // namespace animkit
