// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include "animkit/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace animkit {

namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;  // (K1 * L)^2, L = 1
constexpr double kC2 = 0.03 * 0.03;  // (K2 * L)^2

void check_same_shape(const Image& a, const Image& b, const char* op) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }
    if (a.empty()) {
        throw std::invalid_argument(std::string(op) + ": empty image");
    }
}

std::vector<double> ssim_window_weights() {
    std::vector<double> w(kWindow);
    double sum = 0.0;
    const int radius = kWindow / 2;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - radius;
        w[static_cast<std::size_t>(i)] = std::exp(-0.5 * d * d / (kWindowSigma * kWindowSigma));
        sum += w[static_cast<std::size_t>(i)];
    }
    for (double& v : w) {
        v /= sum;
    }
    return w;
}

// Separable weighted local mean of `field` over all fully-interior windows;
// output is (h - 10) x (w - 10).
std::vector<double> local_mean(const std::vector<double>& field, int h, int w,
                               const std::vector<double>& weights) {
    const int out_w = w - kWindow + 1;
    const int out_h = h - kWindow + 1;
    std::vector<double> rows(static_cast<std::size_t>(h) * out_w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                acc += weights[static_cast<std::size_t>(k)] *
                       field[static_cast<std::size_t>(y) * w + x + k];
            }
            rows[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(out_h) * out_w);
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                acc += weights[static_cast<std::size_t>(k)] *
                       rows[static_cast<std::size_t>(y + k) * out_w + x];
            }
            out[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    }
    return out;
}

}  // namespace

double l1_error(const Image& a, const Image& b) {
    check_same_shape(a, b, "l1_error");
    double acc = 0.0;
    const float* pa = a.data();
    const float* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::abs(static_cast<double>(pa[i]) - pb[i]);
    }
    return acc / static_cast<double>(a.size());
}

double psnr(const Image& a, const Image& b) {
    check_same_shape(a, b, "psnr");
    double acc = 0.0;
    const float* pa = a.data();
    const float* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(pa[i]) - pb[i];
        acc += d * d;
    }
    const double mse = acc / static_cast<double>(a.size());
    if (mse == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(1.0 / mse);
}

double ssim(const Image& a, const Image& b) {
    check_same_shape(a, b, "ssim");
    if (a.height() < kWindow || a.width() < kWindow) {
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");
    }
    static const std::vector<double> weights = ssim_window_weights();
    const int h = a.height();
    const int w = a.width();
    const int out_h = h - kWindow + 1;
    const int out_w = w - kWindow + 1;
    const std::size_t plane = static_cast<std::size_t>(h) * w;

    double channel_sum = 0.0;
    std::vector<double> xa(plane), xb(plane), xaa(plane), xbb(plane), xab(plane);
    for (int c = 0; c < a.channels(); ++c) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const double va = a.at(y, x, c);
                const double vb = b.at(y, x, c);
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                xa[i] = va;
                xb[i] = vb;
                xaa[i] = va * va;
                xbb[i] = vb * vb;
                xab[i] = va * vb;
            }
        }
        const auto mu_a = local_mean(xa, h, w, weights);
        const auto mu_b = local_mean(xb, h, w, weights);
        const auto m_aa = local_mean(xaa, h, w, weights);
        const auto m_bb = local_mean(xbb, h, w, weights);
        const auto m_ab = local_mean(xab, h, w, weights);

        double acc = 0.0;
        for (std::size_t i = 0; i < mu_a.size(); ++i) {
            const double var_a = m_aa[i] - mu_a[i] * mu_a[i];
            const double var_b = m_bb[i] - mu_b[i] * mu_b[i];
            const double cov = m_ab[i] - mu_a[i] * mu_b[i];
            const double numerator = (2.0 * mu_a[i] * mu_b[i] + kC1) * (2.0 * cov + kC2);
            const double denominator =
                (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + kC1) * (var_a + var_b + kC2);
            acc += numerator / denominator;
        }
        channel_sum += acc / (static_cast<double>(out_h) * out_w);
    }
    return channel_sum / a.channels();
}

Image pad_to_square(const Image& image) {
    const int side = std::max(image.height(), image.width());
    if (side == image.height() && side == image.width()) {
        return image;
    }
    const int top = (side - image.height()) / 2;
    const int left = (side - image.width()) / 2;
    Image out(side, side, image.channels());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            for (int c = 0; c < image.channels(); ++c) {
                out.at(top + y, left + x, c) = image.at(y, x, c);
            }
        }
    }
    return out;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
    out << "frame,l1,psnr,ssim\n";
    char buf[192];
    double l1_sum = 0.0;
    double psnr_sum = 0.0;
    double ssim_sum = 0.0;
    for (const MetricRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%.12g\n", row.name.c_str(), row.l1,
                      row.psnr, row.ssim);
        out << buf;
        l1_sum += row.l1;
        psnr_sum += row.psnr;
        ssim_sum += row.ssim;
    }
    if (!rows.empty()) {
        const double n = static_cast<double>(rows.size());
        std::snprintf(buf, sizeof(buf), "mean,%.12g,%.12g,%.12g\n", l1_sum / n, psnr_sum / n,
                      ssim_sum / n);
        out << buf;
    }
}

}  // namespace animkit
