// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "animkit/image_io.hpp"
#include "animkit/metrics.hpp"
#include "commands.hpp"

namespace animkit::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> sorted_png_names(const fs::path& dir) {
    std::vector<std::string> names;
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("not a directory: " + dir.string());
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") {
            names.push_back(entry.path().filename().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += (i > 0 ? ", " : "") + names[i];
    }
    return out;
}

}  // namespace

int run_metrics(const GlobalOptions& global, const MetricsOptions& options) {
    const auto names_a = sorted_png_names(options.dir_a);
    const auto names_b = sorted_png_names(options.dir_b);
    if (names_a.empty() || names_b.empty()) {
        std::fprintf(stderr, "error: no PNG files in %s\n",
                     (names_a.empty() ? options.dir_a : options.dir_b).c_str());
        return 1;
    }
    std::vector<std::string> only_a;
    std::vector<std::string> only_b;
    std::set_difference(names_a.begin(), names_a.end(), names_b.begin(), names_b.end(),
                        std::back_inserter(only_a));
    std::set_difference(names_b.begin(), names_b.end(), names_a.begin(), names_a.end(),
                        std::back_inserter(only_b));
    if (!only_a.empty() || !only_b.empty()) {
        std::fprintf(stderr, "error: directories do not contain the same files\n");
        if (!only_a.empty()) {
            std::fprintf(stderr, "  only in %s: %s\n", options.dir_a.c_str(),
                         join(only_a).c_str());
        }
        if (!only_b.empty()) {
            std::fprintf(stderr, "  only in %s: %s\n", options.dir_b.c_str(),
                         join(only_b).c_str());
        }
        return 1;
    }

    std::vector<MetricRow> rows;
    rows.reserve(names_a.size());
    for (const std::string& name : names_a) {
        const Image a = load_png(fs::path(options.dir_a) / name);
        const Image b = load_png(fs::path(options.dir_b) / name);
        if (!a.same_shape(b)) {
            std::fprintf(stderr, "error: %s has mismatched dimensions between directories\n",
                         name.c_str());
            return 1;
        }
        rows.push_back({name, l1_error(a, b), psnr(a, b), ssim(a, b)});
    }

    const fs::path out_path(options.out_csv);
    if (out_path.has_parent_path()) {
        fs::create_directories(out_path.parent_path());
    }
    std::ofstream out(out_path);
    if (!out) {
        throw std::runtime_error("cannot write " + options.out_csv);
    }
    write_metrics_csv(out, rows);

    double l1_sum = 0.0;
    double psnr_sum = 0.0;
    double ssim_sum = 0.0;
    for (const MetricRow& row : rows) {
        l1_sum += row.l1;
        psnr_sum += row.psnr;
        ssim_sum += row.ssim;
    }
    const double n = static_cast<double>(rows.size());
    std::printf("frames=%zu mean l1=%.12g psnr=%.12g ssim=%.12g\n", rows.size(), l1_sum / n,
                psnr_sum / n, ssim_sum / n);
    if (!global.quiet) {
        std::printf("wrote %s\n", options.out_csv.c_str());
    }
    return 0;
}

}  // namespace animkit::cli
