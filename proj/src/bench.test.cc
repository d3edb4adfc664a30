// Copyright 2026 The ionramsey Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ramsey/bench.h"

#include <cmath>

#include "gtest/gtest.h"
#include "ramsey/error.h"

using namespace ramsey;

namespace {

// sigma * sqrt(tau) at half fringe under independent dephasing, from the
// single-ion and GHZ signal variances (1/L and 1) and contrasts e^{-gamma T},
// e^{-L gamma T}.
double analytic_sigma_sqrt_tau(Protocol p, int n, double gamma, double t) {
    if (p == Protocol::Standard) {
        return std::exp(gamma * t) / std::sqrt(n * t);
    }
    return std::exp(n * gamma * t) / (n * std::sqrt(t));
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
    return g;
}

}  // namespace

TEST(bench, limit_formulas) {
    EXPECT_DOUBLE_EQ(shot_noise_limit(4, 1.0, 1e4), 5e-3);
    EXPECT_DOUBLE_EQ(heisenberg_limit(4, 1.0, 1e4), 2.5e-3);
    EXPECT_DOUBLE_EQ(shot_noise_limit(1, 2.0, 8.0), heisenberg_limit(1, 2.0, 8.0));
}

TEST(bench, operating_point_matches_limits) {
    BenchOptions opt;
    opt.seed = 3;
    RamseyConfig cfg;
    cfg.n_ions = 4;
    cfg.t_ramsey = 2.0;
    const std::int64_t n = 20000;
    OperatingPoint std_point = measure_operating_point(cfg, Protocol::Standard, n, opt);
    OperatingPoint ghz_point = measure_operating_point(cfg, Protocol::GhzFinalPulse, n, opt);
    EXPECT_NEAR(std_point.contrast, 1.0, 1e-6);
    EXPECT_NEAR(ghz_point.contrast, 1.0, 1e-6);
    const double tau = n * 2.0;
    EXPECT_DOUBLE_EQ(std_point.estimate.tau, tau);
    EXPECT_NEAR(std_point.estimate.sigma / shot_noise_limit(4, 2.0, tau), 1.0, 0.05);
    EXPECT_NEAR(ghz_point.estimate.sigma / heisenberg_limit(4, 2.0, tau), 1.0, 0.05);
}

TEST(bench, scaling_slopes) {
    const int ions[] = {1, 2, 4, 8};
    RamseyConfig cfg;
    cfg.t_ramsey = 1.0;
    BenchOptions opt;
    opt.seed = 4;
    ScalingReport report = scan_scaling(ions, cfg, 4000, opt);
    ASSERT_EQ(report.rows.size(), 8u);
    ASSERT_EQ(report.fits.size(), 2u);
    EXPECT_NEAR(report.fits[0].slope, -0.5, 0.1);
    EXPECT_NEAR(report.fits[1].slope, -1.0, 0.1);
    EXPECT_TRUE(std::isfinite(report.fits[0].slope_ci95));
    for (const ScalingRow &row : report.rows) {
        EXPECT_NEAR(row.ratio, 1.0, 0.1) << protocol_name(row.protocol) << " L=" << row.n_ions;
        EXPECT_GT(row.sigma, 0);
        EXPECT_DOUBLE_EQ(row.tau, 4000.0);
    }
    // A single ion GHZ state is a product state: both protocols agree.
    EXPECT_NEAR(report.rows[0].sigma / report.rows[1].sigma, 1.0, 0.05);
}

TEST(bench, scaling_with_two_ion_counts_widens_interval) {
    const int ions[] = {1, 2};
    RamseyConfig cfg;
    ScalingReport report = scan_scaling(ions, cfg, 500, BenchOptions{});
    EXPECT_TRUE(std::isinf(report.fits[0].slope_ci95));
    EXPECT_TRUE(std::isfinite(report.fits[0].slope));
}

TEST(bench, scaling_rejects_ion_counts_beyond_capacity) {
    const int ions[] = {2, kMaxIons + 1};
    try {
        scan_scaling(ions, RamseyConfig{}, 10, BenchOptions{});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Capacity);
    }
}

TEST(bench, sigma_scales_as_inverse_root_trials) {
    RamseyConfig cfg;
    cfg.n_ions = 3;
    cfg.noise.gamma = 0.2;
    BenchOptions opt;
    opt.seed = 5;
    double small = measure_operating_point(cfg, Protocol::Standard, 2000, opt).estimate.sigma;
    double large = measure_operating_point(cfg, Protocol::Standard, 8000, opt).estimate.sigma;
    EXPECT_NEAR(small / large, 2.0, 0.2 * 2.0);
}

TEST(bench, dephased_operating_point_matches_analytic_curve) {
    const double gamma = 0.5;
    BenchOptions opt;
    opt.seed = 6;
    for (Protocol p : {Protocol::Standard, Protocol::GhzFinalPulse}) {
        for (double t : {0.3, 0.8}) {
            RamseyConfig cfg;
            cfg.n_ions = 2;
            cfg.t_ramsey = t;
            cfg.noise.gamma = gamma;
            OperatingPoint point = measure_operating_point(cfg, p, 20000, opt);
            double value = point.estimate.sigma * std::sqrt(point.estimate.tau);
            EXPECT_NEAR(value / analytic_sigma_sqrt_tau(p, 2, gamma, t), 1.0, 0.05) << protocol_name(p) << " " << t;
        }
    }
}

TEST(bench, dephasing_benchmark_has_no_ghz_advantage) {
    // Analytic optima: T* = 1/(2 gamma) unentangled, 1/(2 L gamma) GHZ, with
    // equal minima sqrt(2 e gamma / L).
    const double gamma = 0.5;
    const int n = 2;
    BenchOptions opt;
    opt.seed = 7;
    auto grid = geometric_grid(0.1, 4.0, 9);
    DephasingReport report = dephasing_benchmark(gamma, n, grid, 5000, opt);
    EXPECT_FALSE(report.standard.at_boundary);
    EXPECT_FALSE(report.ghz.at_boundary);
    EXPECT_NEAR(report.standard.t_opt, 1 / (2 * gamma), 0.25 / (2 * gamma));
    EXPECT_NEAR(report.argmin_ratio, 1.0 / n, 0.25 / n);
    EXPECT_NEAR(report.min_ratio, 1.0, 0.1);
    const double expected_min = std::sqrt(2 * std::exp(1.0) * gamma / n);
    EXPECT_NEAR(report.standard.min_value / expected_min, 1.0, 0.05);
    EXPECT_NEAR(report.ghz.min_value / expected_min, 1.0, 0.05);
    bool refined = false;
    for (const DephasingPoint &p : report.points) {
        EXPECT_GT(p.sigma_sqrt_tau, 0);
        refined |= p.refinement;
    }
    EXPECT_TRUE(refined);
}

TEST(bench, dephasing_grid_missing_optimum_is_flagged) {
    const double grid[] = {2.0, 3.0, 4.0};
    DephasingReport report = dephasing_benchmark(0.5, 2, grid, 500, BenchOptions{});
    EXPECT_TRUE(report.standard.at_boundary);
    EXPECT_TRUE(report.ghz.at_boundary);
    EXPECT_DOUBLE_EQ(report.ghz.t_opt, 2.0);
}

TEST(bench, dephasing_benchmark_validation) {
    const double grid[] = {1.0, 2.0, 3.0};
    const double unsorted[] = {1.0, 3.0, 2.0};
    EXPECT_THROW(dephasing_benchmark(0.0, 2, grid, 10, BenchOptions{}), Error);
    EXPECT_THROW(dephasing_benchmark(0.5, 2, std::span<const double>(grid, 2), 10, BenchOptions{}), Error);
    EXPECT_THROW(dephasing_benchmark(0.5, 2, unsorted, 10, BenchOptions{}), Error);
}

TEST(bench, reproducible_across_thread_counts) {
    const int ions[] = {1, 3};
    RamseyConfig cfg;
    cfg.noise.gamma = 0.1;
    BenchOptions one;
    one.seed = 9;
    BenchOptions three = one;
    three.threads = 3;
    ScalingReport a = scan_scaling(ions, cfg, 1000, one);
    ScalingReport b = scan_scaling(ions, cfg, 1000, three);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].sigma, b.rows[i].sigma);
    }
}

TEST(bench, aliasing_guard_applies_to_operating_points) {
    RamseyConfig cfg;
    cfg.n_ions = 4;
    cfg.omega_r = 1.0;
    cfg.t_ramsey = 1.0;
    EXPECT_THROW(measure_operating_point(cfg, Protocol::GhzFinalPulse, 10, BenchOptions{}), Error);
    cfg.unwrap_hint = true;
    EXPECT_NO_THROW(measure_operating_point(cfg, Protocol::GhzFinalPulse, 10, BenchOptions{}));
}
