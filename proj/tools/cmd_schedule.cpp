// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "animkit/schedule.hpp"
#include "commands.hpp"

namespace animkit::cli {

namespace fs = std::filesystem;

int run_schedule(const GlobalOptions& global, const ScheduleOptions& options) {
    const NoiseSchedule base = linear_beta_schedule(options.steps);
    const NoiseSchedule shifted = shift_snr(base, options.gamma);

    fs::create_directories(options.out_dir);
    const fs::path default_csv = fs::path(options.out_dir) / "schedule_default.csv";
    const fs::path shifted_csv = fs::path(options.out_dir) / "schedule_shifted.csv";
    {
        std::ofstream out(default_csv);
        if (!out) {
            throw std::runtime_error("cannot write " + default_csv.string());
        }
        write_schedule_csv(out, base);
    }
    {
        std::ofstream out(shifted_csv);
        if (!out) {
            throw std::runtime_error("cannot write " + shifted_csv.string());
        }
        write_schedule_csv(out, shifted);
    }

    double worst = 0.0;
    for (int t = 1; t <= base.steps(); ++t) {
        const double ratio = shifted.snr(t) / base.snr(t);
        worst = std::max(worst, std::abs(ratio / options.gamma - 1.0));
    }
    std::printf("max relative snr ratio deviation from gamma: %.6e\n", worst);
    if (!global.quiet) {
        std::printf("wrote %s and %s\n", default_csv.string().c_str(),
                    shifted_csv.string().c_str());
    }
    return 0;
}

}  // namespace animkit::cli
