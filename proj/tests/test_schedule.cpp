// Copyright (C) 2026 the animkit authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "animkit/schedule.hpp"

using namespace animkit;

namespace {

// Independent check: rebuild alpha_bar' from the returned betas by cumulative
// product and compare snr'/snr against gamma.
double max_snr_ratio_deviation(const NoiseSchedule& base, const NoiseSchedule& shifted,
                               double gamma) {
    double worst = 0.0;
    double abar = 1.0;
    for (int t = 1; t <= shifted.steps(); ++t) {
        abar *= 1.0 - shifted.beta(t);
        const double snr_new = abar / (1.0 - abar);
        const double ratio = snr_new / base.snr(t);
        worst = std::max(worst, std::abs(ratio / gamma - 1.0));
    }
    return worst;
}

// abar(1) = 0.5, abar(2) = 0.25: handy for exact-coefficient arithmetic.
NoiseSchedule quarter_schedule() {
    return NoiseSchedule::from_betas({0.5, 0.5});
}

}  // namespace

TEST_CASE("linear beta schedule endpoints") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    CHECK(s.steps() == 1000);
    CHECK(s.beta(1) == doctest::Approx(0.00085).epsilon(1e-15));
    CHECK(s.beta(1000) == doctest::Approx(0.012).epsilon(1e-15));
}

TEST_CASE("linear beta schedule two-point case") {
    const NoiseSchedule s = linear_beta_schedule(2);
    CHECK(s.beta(1) == 0.00085);
    CHECK(s.beta(2) == 0.012);
}

TEST_CASE("linear beta schedule interior point, T=4") {
    const NoiseSchedule s = linear_beta_schedule(4);
    CHECK(s.beta(2) == doctest::Approx(0.00085 + (0.012 - 0.00085) / 3.0).epsilon(1e-14));
}

TEST_CASE("linear beta schedule rejects T < 2") {
    CHECK_THROWS_AS(linear_beta_schedule(1), std::invalid_argument);
    CHECK_THROWS_AS(linear_beta_schedule(0), std::invalid_argument);
}

TEST_CASE("schedule table invariants") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    CHECK(s.alpha_bar(0) == 1.0);
    CHECK(std::isinf(s.snr(0)));
    CHECK(s.alpha_bar(1000) > 0.0);
    CHECK(s.alpha_bar(1000) < 1.0);
    for (int t = 1; t <= 1000; ++t) {
        CHECK(s.alpha_bar(t) < s.alpha_bar(t - 1));
        const double expected = s.alpha_bar(t) / (1.0 - s.alpha_bar(t));
        CHECK(std::abs(s.snr(t) / expected - 1.0) <= 1e-12);
        if (t >= 2) {
            CHECK(s.snr(t) < s.snr(t - 1));
        }
    }
}

TEST_CASE("shift_snr with gamma=1 is the identity") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const NoiseSchedule shifted = shift_snr(s, 1.0);
    for (int t = 1; t <= s.steps(); ++t) {
        CHECK(shifted.beta(t) == doctest::Approx(s.beta(t)).epsilon(1e-12));
    }
}

TEST_CASE("shift_snr hand-evaluated T=4 case") {
    const NoiseSchedule s = linear_beta_schedule(4);
    // First step of the recurrence by hand: snr1 = 0.99915/0.00085, halved,
    // then abar_c1 = snr/(1+snr) against abar_c0 = 1.
    const double snr1 = 0.99915 / 0.00085;
    CHECK(s.snr(1) == doctest::Approx(snr1).epsilon(1e-12));
    CHECK(0.5 * snr1 == doctest::Approx(587.7352941).epsilon(1e-9));

    const NoiseSchedule shifted = shift_snr(s, 0.5);
    const double abar_c1 = (0.5 * snr1) / (1.0 + 0.5 * snr1);
    CHECK(abar_c1 == doctest::Approx(0.9983015).epsilon(1e-7));
    CHECK(shifted.beta(1) == doctest::Approx(1.0 - abar_c1).epsilon(1e-12));
    CHECK(shifted.beta(1) == doctest::Approx(1.6985e-3).epsilon(1e-4));
    CHECK(max_snr_ratio_deviation(s, shifted, 0.5) <= 1e-12);
}

TEST_CASE("shift_snr reconstruction oracle, T=1000 gamma=0.5") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const NoiseSchedule shifted = shift_snr(s, 0.5);
    CHECK(max_snr_ratio_deviation(s, shifted, 0.5) <= 1e-9);
}

TEST_CASE("shift_snr keeps betas in range and destroys more signal") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    for (double gamma : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        CAPTURE(gamma);
        const NoiseSchedule shifted = shift_snr(s, gamma);
        for (int t = 1; t <= shifted.steps(); ++t) {
            CHECK(shifted.beta(t) > 0.0);
            CHECK(shifted.beta(t) < 1.0);
            CHECK(shifted.alpha_bar(t) < shifted.alpha_bar(t - 1));
        }
        if (gamma < 1.0) {
            CHECK(shifted.alpha_bar(1000) < s.alpha_bar(1000));
        }
        CHECK(max_snr_ratio_deviation(s, shifted, gamma) <= 1e-9);
    }
}

TEST_CASE("shift_snr rejects gamma outside (0, 1]") {
    const NoiseSchedule s = linear_beta_schedule(10);
    CHECK_THROWS_AS(shift_snr(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(shift_snr(s, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(shift_snr(s, 1.5), std::invalid_argument);
}

TEST_CASE("forward_diffuse boundary and scalar anchors") {
    const NoiseSchedule s = quarter_schedule();
    const std::vector<double> x0 = {1.0, -2.0, 0.5};
    const std::vector<double> eps = {0.3, 0.3, 0.3};
    CHECK(forward_diffuse(x0, 0, eps, s) == x0);

    // abar(2) = 0.25: 0.5 * 1 + sqrt(0.75) * 1
    const auto out = forward_diffuse(std::vector<double>{1.0}, 2, std::vector<double>{1.0}, s);
    CHECK(out[0] == doctest::Approx(1.3660254037844386).epsilon(1e-14));
}

TEST_CASE("forward_diffuse argument errors") {
    const NoiseSchedule s = quarter_schedule();
    const std::vector<double> x0 = {1.0, 2.0};
    const std::vector<double> eps = {0.0};
    CHECK_THROWS_AS(forward_diffuse(x0, 1, eps, s), std::invalid_argument);
    const std::vector<double> eps2 = {0.0, 0.0};
    CHECK_THROWS_AS(forward_diffuse(x0, 3, eps2, s), std::invalid_argument);
    CHECK_THROWS_AS(forward_diffuse(x0, -1, eps2, s), std::invalid_argument);
}

TEST_CASE("forward_diffuse Monte-Carlo variance") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const int t = 700;
    constexpr std::size_t n = 100000;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x0(n, 0.0);
    std::vector<double> eps(n);
    for (double& e : eps) {
        e = normal(rng);
    }
    const auto x_t = forward_diffuse(x0, t, eps, s);
    double mean = 0.0;
    for (double v : x_t) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x_t) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(n);
    const double expected = 1.0 - s.alpha_bar(t);
    CHECK(std::abs(var / expected - 1.0) < 0.03);
}

TEST_CASE("predict_x0_from_eps anchors and round trip") {
    const NoiseSchedule s = quarter_schedule();
    const std::vector<double> x_t = {1.0};
    CHECK(predict_x0_from_eps(x_t, 0, std::vector<double>{0.0}, s) == x_t);

    const auto x0 = predict_x0_from_eps(x_t, 2, std::vector<double>{0.0}, s);
    CHECK(x0[0] == doctest::Approx(2.0).epsilon(1e-14));

    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    const NoiseSchedule big = linear_beta_schedule(1000);
    for (int t : {1, 124, 500, 999, 1000}) {
        std::vector<double> orig(16), eps(16);
        for (std::size_t i = 0; i < orig.size(); ++i) {
            orig[i] = normal(rng);
            eps[i] = normal(rng);
        }
        const auto noised = forward_diffuse(orig, t, eps, big);
        const auto recovered = predict_x0_from_eps(noised, t, eps, big);
        for (std::size_t i = 0; i < orig.size(); ++i) {
            CHECK(recovered[i] == doctest::Approx(orig[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("sample_timestep contracts") {
    std::mt19937_64 rng(99);
    CHECK(sample_timestep({5, 5}, rng) == 5);

    std::mt19937_64 a(123), b(123);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_timestep({0, 999}, a) == sample_timestep({0, 999}, b));
    }

    std::mt19937_64 stat(555);
    double mean = 0.0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
        mean += sample_timestep({0, 124}, stat);
    }
    mean /= n;
    CHECK(std::abs(mean - 62.0) < 1.0);

    CHECK_THROWS_AS(sample_timestep({10, 5}, rng), std::invalid_argument);
}

TEST_CASE("schedule CSV format") {
    const NoiseSchedule s = linear_beta_schedule(4);
    std::ostringstream out;
    write_schedule_csv(out, s);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,beta,alpha,alpha_bar,snr");
    std::getline(in, line);
    CHECK(line == "0,,,1,inf");
    int rows = 0;
    std::getline(in, line);
    CHECK(line.substr(0, 2) == "1,");
    // 12 significant digits round-trip through parsing
    const double beta1 = std::stod(line.substr(2));
    CHECK(beta1 == doctest::Approx(s.beta(1)).epsilon(1e-11));
    rows = 2;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == s.steps() + 1);
}
