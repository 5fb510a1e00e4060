// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include "animkit/keypoints.hpp"

#include <fstream>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace animkit {

const char* to_string(Hand hand) {
    return hand == Hand::kLeft ? "left" : "right";
}

const char* to_string(RegionKind kind) {
    switch (kind) {
        case RegionKind::kFace:
            return "face";
        case RegionKind::kLeftHand:
            return "left_hand";
        case RegionKind::kRightHand:
            return "right_hand";
    }
    return "unknown";
}

std::span<const Keypoint> KeypointFrame::hand(Hand hand) const {
    const int begin = hand == Hand::kLeft ? kLeftHandBegin : kRightHandBegin;
    return {points.data() + begin, static_cast<std::size_t>(kHandPointCount)};
}

std::span<const Keypoint> KeypointFrame::region(RegionKind kind) const {
    switch (kind) {
        case RegionKind::kFace:
            return {points.data() + kFaceBegin, static_cast<std::size_t>(kFaceEnd - kFaceBegin)};
        case RegionKind::kLeftHand:
            return hand(Hand::kLeft);
        case RegionKind::kRightHand:
            return hand(Hand::kRight);
    }
    return {};
}

KeypointSequence load_keypoints_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_keypoints_json: cannot open " + path.string());
    }
    nlohmann::json doc = nlohmann::json::parse(in);
    KeypointSequence seq;
    seq.video = doc.value("video", std::string{});
    seq.width = doc.at("width").get<int>();
    seq.height = doc.at("height").get<int>();
    for (const auto& frame_doc : doc.at("frames")) {
        KeypointFrame frame;
        frame.frame_index = frame_doc.at("index").get<int>();
        frame.width = seq.width;
        frame.height = seq.height;
        const auto& pts = frame_doc.at("points");
        if (pts.size() != kKeypointCount) {
            throw std::runtime_error("load_keypoints_json: frame " +
                                     std::to_string(frame.frame_index) + " has " +
                                     std::to_string(pts.size()) + " points, expected 133");
        }
        for (int i = 0; i < kKeypointCount; ++i) {
            const auto& p = pts[static_cast<std::size_t>(i)];
            if (p.size() != 3) {
                throw std::runtime_error("load_keypoints_json: point entry is not [x, y, conf]");
            }
            frame.points[static_cast<std::size_t>(i)] = {p[0].get<double>(), p[1].get<double>(),
                                                         p[2].get<double>()};
        }
        seq.frames.push_back(frame);
    }
    return seq;
}

void save_keypoints_json(const std::filesystem::path& path, const KeypointSequence& sequence) {
    nlohmann::json doc;
    doc["video"] = sequence.video;
    doc["width"] = sequence.width;
    doc["height"] = sequence.height;
    doc["frames"] = nlohmann::json::array();
    for (const KeypointFrame& frame : sequence.frames) {
        nlohmann::json frame_doc;
        frame_doc["index"] = frame.frame_index;
        auto& pts = frame_doc["points"] = nlohmann::json::array();
        for (const Keypoint& p : frame.points) {
            pts.push_back({p.x, p.y, p.confidence});
        }
        doc["frames"].push_back(std::move(frame_doc));
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("save_keypoints_json: cannot write " + path.string());
    }
    out << doc.dump(1) << '\n';
}

namespace {

std::array<int, kKeypointCount> build_swap_table() {
    std::array<int, kKeypointCount> table{};
    std::iota(table.begin(), table.end(), 0);
    auto swap_pair = [&table](int a, int b) {
        table[static_cast<std::size_t>(a)] = b;
        table[static_cast<std::size_t>(b)] = a;
    };
    // Body: eyes, ears, shoulders, elbows, wrists, hips, knees, ankles.
    for (int i = 1; i <= 15; i += 2) {
        swap_pair(i, i + 1);
    }
    // Feet: big toe, small toe, heel.
    for (int i = 0; i < 3; ++i) {
        swap_pair(kFootBegin + i, kFootBegin + 3 + i);
    }
    // Face, 68-landmark symmetry, local indices relative to kFaceBegin.
    auto swap_face = [&swap_pair](int a, int b) { swap_pair(kFaceBegin + a, kFaceBegin + b); };
    for (int i = 0; i < 8; ++i) {  // jaw 0..16, 8 is the chin midline
        swap_face(i, 16 - i);
    }
    for (int i = 0; i < 5; ++i) {  // brows 17..21 <-> 26..22
        swap_face(17 + i, 26 - i);
    }
    swap_face(31, 35);  // nostrils, 33 midline
    swap_face(32, 34);
    swap_face(36, 45);  // eyes
    swap_face(37, 44);
    swap_face(38, 43);
    swap_face(39, 42);
    swap_face(40, 47);
    swap_face(41, 46);
    swap_face(48, 54);  // outer mouth, 51/57 midline
    swap_face(49, 53);
    swap_face(50, 52);
    swap_face(55, 59);
    swap_face(56, 58);
    swap_face(60, 64);  // inner mouth, 62/66 midline
    swap_face(61, 63);
    swap_face(65, 67);
    // Hands swap as whole blocks.
    for (int i = 0; i < kHandPointCount; ++i) {
        swap_pair(kLeftHandBegin + i, kRightHandBegin + i);
    }
    return table;
}

}  // namespace

const std::array<int, kKeypointCount>& horizontal_swap_table() {
    static const std::array<int, kKeypointCount> table = build_swap_table();
    return table;
}

KeypointFrame flip_keypoints_horizontal(const KeypointFrame& frame) {
    const auto& table = horizontal_swap_table();
    KeypointFrame out = frame;
    for (int i = 0; i < kKeypointCount; ++i) {
        Keypoint p = frame.points[static_cast<std::size_t>(table[static_cast<std::size_t>(i)])];
        p.x = frame.width - 1 - p.x;
        out.points[static_cast<std::size_t>(i)] = p;
    }
    return out;
}

}  // namespace animkit
