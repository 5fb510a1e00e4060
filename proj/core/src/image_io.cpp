// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include "animkit/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include <png.h>

namespace animkit {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f != nullptr) {
            std::fclose(f);
        }
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::string& what, const std::filesystem::path& path) {
    throw std::runtime_error(what + ": " + path.string());
}

}  // namespace

Image load_png(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) {
        fail("load_png: cannot open", path);
    }
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (png == nullptr || info == nullptr) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail("load_png: libpng init failed", path);
    }

    std::vector<png_byte> interleaved;
    std::vector<png_bytep> row_pointers;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int channels = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail("load_png: decode error", path);
    }
    png_init_io(png, file.get());
    png_read_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) {
        png_set_palette_to_rgb(png);
    }
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
    }
    if (bit_depth == 16) {
        png_set_strip_16(png);
    }
    if (png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_set_tRNS_to_alpha(png);
    }
    png_set_strip_alpha(png);
    png_read_update_info(png, info);
    channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail("load_png: unsupported channel layout", path);
    }

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    interleaved.resize(row_bytes * height);
    row_pointers.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        row_pointers[y] = interleaved.data() + static_cast<std::size_t>(y) * row_bytes;
    }
    png_read_image(png, row_pointers.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image image(static_cast<int>(height), static_cast<int>(width), channels);
    float* dst = image.data();
    for (png_uint_32 y = 0; y < height; ++y) {
        const png_byte* src = interleaved.data() + static_cast<std::size_t>(y) * row_bytes;
        const std::size_t count = static_cast<std::size_t>(width) * channels;
        for (std::size_t i = 0; i < count; ++i) {
            *dst++ = static_cast<float>(src[i]) / 255.0f;
        }
    }
    return image;
}

void save_png(const std::filesystem::path& path, const Image& image) {
    if (image.empty() || (image.channels() != 1 && image.channels() != 3)) {
        throw std::invalid_argument("save_png: expected a nonempty 1- or 3-channel image");
    }
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) {
        fail("save_png: cannot open for writing", path);
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (png == nullptr || info == nullptr) {
        png_destroy_write_struct(&png, &info);
        fail("save_png: libpng init failed", path);
    }

    const int h = image.height();
    const int w = image.width();
    const int c = image.channels();
    std::vector<png_byte> bytes(static_cast<std::size_t>(h) * w * c);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const float v = std::clamp(image.data()[i], 0.0f, 1.0f);
        bytes[i] = static_cast<png_byte>(std::lround(v * 255.0f));
    }
    std::vector<png_bytep> rows(static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) {
        rows[static_cast<std::size_t>(y)] = bytes.data() + static_cast<std::size_t>(y) * w * c;
    }

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail("save_png: encode error", path);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
                 c == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void save_png_bilevel(const std::filesystem::path& path, int height, int width,
                      const std::vector<std::uint8_t>& mask) {
    if (height <= 0 || width <= 0 ||
        mask.size() != static_cast<std::size_t>(height) * width) {
        throw std::invalid_argument("save_png_bilevel: mask size mismatch");
    }
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) {
        fail("save_png_bilevel: cannot open for writing", path);
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (png == nullptr || info == nullptr) {
        png_destroy_write_struct(&png, &info);
        fail("save_png_bilevel: libpng init failed", path);
    }

    const std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
    std::vector<png_byte> packed(row_bytes * height, 0);
    for (int y = 0; y < height; ++y) {
        png_byte* row = packed.data() + static_cast<std::size_t>(y) * row_bytes;
        for (int x = 0; x < width; ++x) {
            if (mask[static_cast<std::size_t>(y) * width + x] != 0) {
                row[x / 8] |= static_cast<png_byte>(0x80 >> (x % 8));
            }
        }
    }
    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
        rows[static_cast<std::size_t>(y)] = packed.data() + static_cast<std::size_t>(y) * row_bytes;
    }

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail("save_png_bilevel: encode error", path);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 1,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::string frame_filename(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%06d.png", index);
    return buf;
}

}  // namespace animkit
