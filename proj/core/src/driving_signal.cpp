// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include "animkit/driving_signal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace animkit {

namespace {

// Classic 18-entry limb palette, RGB 0..255.
constexpr std::array<std::array<int, 3>, 18> kPalette = {{{255, 0, 0},
                                                          {255, 85, 0},
                                                          {255, 170, 0},
                                                          {255, 255, 0},
                                                          {170, 255, 0},
                                                          {85, 255, 0},
                                                          {0, 255, 0},
                                                          {0, 255, 85},
                                                          {0, 255, 170},
                                                          {0, 255, 255},
                                                          {0, 170, 255},
                                                          {0, 85, 255},
                                                          {0, 0, 255},
                                                          {85, 0, 255},
                                                          {170, 0, 255},
                                                          {255, 0, 255},
                                                          {255, 0, 170},
                                                          {255, 0, 85}}};

constexpr std::array<std::array<int, 2>, 17> kBodyBones = {{{0, 1},
                                                            {0, 2},
                                                            {1, 3},
                                                            {2, 4},
                                                            {0, 5},
                                                            {0, 6},
                                                            {5, 7},
                                                            {7, 9},
                                                            {6, 8},
                                                            {8, 10},
                                                            {5, 11},
                                                            {6, 12},
                                                            {11, 12},
                                                            {11, 13},
                                                            {13, 15},
                                                            {12, 14},
                                                            {14, 16}}};

constexpr std::array<std::array<int, 2>, 6> kFootBones = {
    {{15, 17}, {15, 18}, {15, 19}, {16, 20}, {16, 21}, {16, 22}}};

// Wrist-to-fingertip chains of the 21-point hand model, local indices.
constexpr std::array<std::array<int, 2>, 20> kHandBones = {
    {{0, 1},   {1, 2},   {2, 3},   {3, 4},   {0, 5},   {5, 6},   {6, 7},
     {7, 8},   {0, 9},   {9, 10},  {10, 11}, {11, 12}, {0, 13},  {13, 14},
     {14, 15}, {15, 16}, {0, 17},  {17, 18}, {18, 19}, {19, 20}}};

struct Color {
    float r, g, b;
};

Color palette_color(std::size_t index) {
    const auto& c = kPalette[index % kPalette.size()];
    return {c[0] / 255.0f, c[1] / 255.0f, c[2] / 255.0f};
}

void set_pixel(Image& img, int x, int y, const Color& color) {
    img.at(y, x, 0) = color.r;
    img.at(y, x, 1) = color.g;
    img.at(y, x, 2) = color.b;
}

double point_segment_distance(double px, double py, double x0, double y0, double x1, double y1) {
    const double dx = x1 - x0;
    const double dy = y1 - y0;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) {
        t = std::clamp(((px - x0) * dx + (py - y0) * dy) / len2, 0.0, 1.0);
    }
    const double cx = x0 + t * dx;
    const double cy = y0 + t * dy;
    return std::hypot(px - cx, py - cy);
}

void paint_segment(Image& img, const Keypoint& a, const Keypoint& b, double radius,
                   const Color& color) {
    const int x_lo = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - radius)));
    const int x_hi = std::min(img.width() - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + radius)));
    const int y_lo = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - radius)));
    const int y_hi = std::min(img.height() - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + radius)));
    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) {
            if (point_segment_distance(x, y, a.x, a.y, b.x, b.y) <= radius) {
                set_pixel(img, x, y, color);
            }
        }
    }
}

void paint_disc(Image& img, double cx, double cy, double radius, const Color& color) {
    const int x_lo = std::max(0, static_cast<int>(std::floor(cx - radius)));
    const int x_hi = std::min(img.width() - 1, static_cast<int>(std::ceil(cx + radius)));
    const int y_lo = std::max(0, static_cast<int>(std::floor(cy - radius)));
    const int y_hi = std::min(img.height() - 1, static_cast<int>(std::ceil(cy + radius)));
    const double r2 = radius * radius;
    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            if (dx * dx + dy * dy <= r2) {
                set_pixel(img, x, y, color);
            }
        }
    }
}

bool hand_visible(const KeypointFrame& frame, Hand hand, double threshold) {
    for (const Keypoint& p : frame.hand(hand)) {
        if (p.confidence < threshold) {
            return false;
        }
    }
    return true;
}

}  // namespace

double BlurCondition::speed() const {
    return std::hypot(vx, vy);
}

std::optional<Vec2> movement_vector(const KeypointFrame& curr, const KeypointFrame& prev,
                                    Hand hand, double confidence_threshold) {
    if (!hand_visible(curr, hand, confidence_threshold) ||
        !hand_visible(prev, hand, confidence_threshold)) {
        return std::nullopt;
    }
    const auto curr_pts = curr.hand(hand);
    const auto prev_pts = prev.hand(hand);
    Vec2 v;
    for (int i = 0; i < kHandPointCount; ++i) {
        v.x += curr_pts[static_cast<std::size_t>(i)].x - prev_pts[static_cast<std::size_t>(i)].x;
        v.y += curr_pts[static_cast<std::size_t>(i)].y - prev_pts[static_cast<std::size_t>(i)].y;
    }
    v.x /= kHandPointCount;
    v.y /= kHandPointCount;
    return v;
}

std::optional<HandCrop> crop_hand(const Image& image, const KeypointFrame& keypoints, Hand hand,
                                  double pad_ratio, double confidence_threshold) {
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    bool any = false;
    for (const Keypoint& p : keypoints.hand(hand)) {
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
    const double ext_x = (max_x + pad_x) - (min_x - pad_x);
    const double ext_y = (max_y + pad_y) - (min_y - pad_y);
    const double side = std::max(ext_x, ext_y);
    const double cx = (min_x + max_x) / 2.0;
    const double cy = (min_y + max_y) / 2.0;
    Rect box;
    box.x0 = std::clamp(static_cast<int>(std::floor(cx - side / 2.0)), 0, image.width() - 1);
    box.x1 = std::clamp(static_cast<int>(std::ceil(cx + side / 2.0)), 0, image.width() - 1);
    box.y0 = std::clamp(static_cast<int>(std::floor(cy - side / 2.0)), 0, image.height() - 1);
    box.y1 = std::clamp(static_cast<int>(std::ceil(cy + side / 2.0)), 0, image.height() - 1);
    return HandCrop{crop(image, box), box};
}

double sharpness_score(const Image& input) {
    if (input.height() < 3 || input.width() < 3) {
        throw std::invalid_argument("sharpness_score: crop smaller than 3x3");
    }
    const Image gray = to_grayscale(input);
    const int h = gray.height();
    const int w = gray.width();
    const std::size_t n = static_cast<std::size_t>(h - 2) * (w - 2);
    std::vector<double> response;
    response.reserve(n);
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const double v = static_cast<double>(gray.at(y - 1, x, 0)) + gray.at(y + 1, x, 0) +
                             gray.at(y, x - 1, 0) + gray.at(y, x + 1, 0) -
                             4.0 * gray.at(y, x, 0);
            response.push_back(v);
        }
    }
    double mean = 0.0;
    for (double v : response) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double variance = 0.0;
    for (double v : response) {
        variance += (v - mean) * (v - mean);
    }
    return variance / static_cast<double>(n);
}

Image render_pose_map(const KeypointFrame& keypoints, int height, int width,
                      double confidence_threshold) {
    Image canvas(height, width, 3);
    const auto& pts = keypoints.points;
    auto visible = [&](int i) {
        return pts[static_cast<std::size_t>(i)].confidence >= confidence_threshold;
    };

    std::size_t color_index = 0;
    for (const auto& bone : kBodyBones) {
        if (visible(bone[0]) && visible(bone[1])) {
            paint_segment(canvas, pts[static_cast<std::size_t>(bone[0])],
                          pts[static_cast<std::size_t>(bone[1])], kBodyBoneRadius,
                          palette_color(color_index));
        }
        ++color_index;
    }
    for (const auto& bone : kFootBones) {
        if (visible(bone[0]) && visible(bone[1])) {
            paint_segment(canvas, pts[static_cast<std::size_t>(bone[0])],
                          pts[static_cast<std::size_t>(bone[1])], kBodyBoneRadius,
                          palette_color(color_index));
        }
        ++color_index;
    }
    for (int i = kBodyBegin; i < kFootEnd; ++i) {
        if (visible(i)) {
            paint_disc(canvas, pts[static_cast<std::size_t>(i)].x,
                       pts[static_cast<std::size_t>(i)].y, kBodyBoneRadius,
                       palette_color(static_cast<std::size_t>(i)));
        }
    }
    const Color white{1.0f, 1.0f, 1.0f};
    for (int i = kFaceBegin; i < kFaceEnd; ++i) {
        if (visible(i)) {
            paint_disc(canvas, pts[static_cast<std::size_t>(i)].x,
                       pts[static_cast<std::size_t>(i)].y, kFaceDotRadius, white);
        }
    }
    for (int base : {kLeftHandBegin, kRightHandBegin}) {
        std::size_t hand_color = 0;
        for (const auto& bone : kHandBones) {
            const int a = base + bone[0];
            const int b = base + bone[1];
            if (visible(a) && visible(b)) {
                paint_segment(canvas, pts[static_cast<std::size_t>(a)],
                              pts[static_cast<std::size_t>(b)], kHandBoneRadius,
                              palette_color(hand_color));
            }
            ++hand_color;
        }
    }
    return canvas;
}

Image overlay_blur_condition(const Image& pose_map, const Rect& bbox, const BlurCondition& cond,
                             const OverlayScale& scale) {
    if (!cond.valid) {
        return pose_map;
    }
    if (pose_map.channels() != 3) {
        throw std::invalid_argument("overlay_blur_condition: pose map must be RGB");
    }
    if (!bbox.valid() || bbox.x0 < 0 || bbox.y0 < 0 || bbox.x1 >= pose_map.width() ||
        bbox.y1 >= pose_map.height()) {
        throw std::invalid_argument("overlay_blur_condition: bbox outside pose map");
    }
    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    const Color color{
        static_cast<float>(clamp01(0.5 + cond.vx / (2.0 * scale.v_max))),
        static_cast<float>(clamp01(0.5 + cond.vy / (2.0 * scale.v_max))),
        static_cast<float>(clamp01(cond.sharpness / scale.s_max)),
    };
    const double cx = (bbox.x0 + bbox.x1) / 2.0;
    const double cy = (bbox.y0 + bbox.y1) / 2.0;
    const double radius = 0.5 * std::hypot(static_cast<double>(bbox.width()),
                                           static_cast<double>(bbox.height()));
    Image out = pose_map;
    paint_disc(out, cx, cy, radius, color);
    return out;
}

std::pair<Image, KeypointFrame> flip_horizontal(const Image& image,
                                                const KeypointFrame& keypoints) {
    return {flip_image_horizontal(image), flip_keypoints_horizontal(keypoints)};
}

BlurCondition compute_blur_condition(const Image& frame, const KeypointFrame& curr,
                                     const KeypointFrame* prev, Hand hand, double pad_ratio,
                                     double confidence_threshold) {
    BlurCondition cond;
    cond.hand = hand;
    if (prev == nullptr) {
        return cond;
    }
    const auto v = movement_vector(curr, *prev, hand, confidence_threshold);
    if (!v.has_value()) {
        return cond;
    }
    const auto hand_crop = crop_hand(frame, curr, hand, pad_ratio, confidence_threshold);
    if (!hand_crop.has_value() || hand_crop->crop.height() < 3 || hand_crop->crop.width() < 3) {
        return cond;
    }
    cond.vx = v->x;
    cond.vy = v->y;
    cond.sharpness = sharpness_score(hand_crop->crop);
    cond.valid = true;
    return cond;
}

void write_blur_csv_header(std::ostream& out) {
    out << "frame,hand,vx,vy,speed,sharpness,valid\n";
}

void write_blur_csv_row(std::ostream& out, int frame, const BlurCondition& cond) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%d,%s,%.12g,%.12g,%.12g,%.12g,%s\n", frame,
                  to_string(cond.hand), cond.vx, cond.vy, cond.speed(), cond.sharpness,
                  cond.valid ? "true" : "false");
    out << buf;
}

}  // namespace animkit
