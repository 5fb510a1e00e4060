// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "animkit/metrics.hpp"
#include "support/oracles.hpp"

using namespace animkit;

namespace {

Image random_image(int h, int w, int c, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    Image img(h, w, c);
    for (std::size_t i = 0; i < img.size(); ++i) {
        img.data()[i] = dist(rng);
    }
    return img;
}

Image constant_image(int h, int w, int c, float value) {
    return Image(h, w, c, value);
}

}  // namespace

TEST_CASE("l1 anchors and loop oracle") {
    const Image a = random_image(8, 8, 3, 1);
    CHECK(l1_error(a, a) == 0.0);

    CHECK(l1_error(constant_image(4, 4, 3, 0.75f), constant_image(4, 4, 3, 0.25f)) ==
          doctest::Approx(0.5).epsilon(1e-12));

    const Image x = random_image(4, 4, 3, 2);
    const Image y = random_image(4, 4, 3, 3);
    double expected = 0.0;
    for (int yy = 0; yy < 4; ++yy) {
        for (int xx = 0; xx < 4; ++xx) {
            for (int c = 0; c < 3; ++c) {
                expected += std::abs(static_cast<double>(x.at(yy, xx, c)) - y.at(yy, xx, c));
            }
        }
    }
    expected /= 48.0;
    CHECK(l1_error(x, y) == doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(l1_error(x, random_image(5, 4, 3, 4)), std::invalid_argument);
}

TEST_CASE("psnr anchors") {
    const Image zero = constant_image(8, 8, 3, 0.0f);
    const Image half = constant_image(8, 8, 3, 0.5f);
    const Image one = constant_image(8, 8, 3, 1.0f);

    CHECK(psnr(zero, half) == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-12));
    CHECK(psnr(zero, half) == doctest::Approx(6.0206).epsilon(1e-4));
    CHECK(std::isinf(psnr(half, half)));
    CHECK(psnr(zero, one) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("psnr is monotone decreasing in MSE") {
    const Image base = random_image(16, 16, 1, 5);
    double prev_psnr = std::numeric_limits<double>::infinity();
    for (float offset : {0.05f, 0.1f, 0.2f, 0.4f}) {
        Image shifted = base;
        for (std::size_t i = 0; i < shifted.size(); ++i) {
            shifted.data()[i] = std::min(1.0f, shifted.data()[i] + offset);
        }
        const double p = psnr(base, shifted);
        CHECK(p < prev_psnr);
        prev_psnr = p;
    }
}

TEST_CASE("metrics are symmetric in their arguments") {
    const Image a = random_image(16, 16, 3, 6);
    const Image b = random_image(16, 16, 3, 7);
    CHECK(l1_error(a, b) == l1_error(b, a));
    CHECK(psnr(a, b) == psnr(b, a));
    CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
}

TEST_CASE("ssim of an image with itself is exactly 1") {
    const Image a = random_image(16, 20, 3, 8);
    CHECK(ssim(a, a) == 1.0);
}

TEST_CASE("ssim of an inverted checkerboard is strongly negative") {
    Image board(16, 16, 1);
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            board.at(y, x, 0) = static_cast<float>((x + y) % 2);
        }
    }
    Image inverted = board;
    for (std::size_t i = 0; i < inverted.size(); ++i) {
        inverted.data()[i] = 1.0f - inverted.data()[i];
    }
    CHECK(ssim(board, inverted) < 0.0);
}

TEST_CASE("ssim equals the direct per-window formula") {
    const Image a = random_image(16, 16, 1, 9);
    const Image b = random_image(16, 16, 1, 10);
    CHECK(ssim(a, b) == doctest::Approx(testing::ssim_direct(a, b)).epsilon(1e-9));

    const Image a3 = random_image(14, 18, 3, 11);
    const Image b3 = random_image(14, 18, 3, 12);
    CHECK(ssim(a3, b3) == doctest::Approx(testing::ssim_direct(a3, b3)).epsilon(1e-9));
}

TEST_CASE("ssim rejects images smaller than the window") {
    const Image small = random_image(10, 16, 1, 13);
    CHECK_THROWS_AS(ssim(small, small), std::invalid_argument);
}

TEST_CASE("pad_to_square") {
    const Image square = random_image(32, 32, 3, 14);
    CHECK(pad_to_square(square) == square);

    const Image portrait = random_image(512, 896, 3, 15);
    const Image padded = pad_to_square(portrait);
    CHECK(padded.height() == 896);
    CHECK(padded.width() == 896);
    // 192-px black bands above and below, content preserved byte-identically.
    for (int x = 0; x < 896; ++x) {
        CHECK(padded.at(0, x, 0) == 0.0f);
        CHECK(padded.at(191, x, 1) == 0.0f);
        CHECK(padded.at(704, x, 2) == 0.0f);
        CHECK(padded.at(895, x, 0) == 0.0f);
    }
    bool content_equal = true;
    for (int y = 0; y < 512 && content_equal; ++y) {
        for (int x = 0; x < 896 && content_equal; ++x) {
            for (int c = 0; c < 3; ++c) {
                if (padded.at(192 + y, x, c) != portrait.at(y, x, c)) {
                    content_equal = false;
                    break;
                }
            }
        }
    }
    CHECK(content_equal);
}

TEST_CASE("metrics CSV with mean row and inf PSNR literal") {
    std::vector<MetricRow> rows;
    rows.push_back({"000000.png", 0.0, std::numeric_limits<double>::infinity(), 1.0});
    rows.push_back({"000001.png", 0.5, 6.0206, 0.25});
    std::ostringstream out;
    write_metrics_csv(out, rows);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "frame,l1,psnr,ssim");
    std::getline(in, line);
    CHECK(line == "000000.png,0,inf,1");
    std::getline(in, line);
    CHECK(line.substr(0, 15) == "000001.png,0.5,");
    std::getline(in, line);
    CHECK(line.substr(0, 5) == "mean,");
    CHECK(line.find("inf") != std::string::npos);
}
