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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ramsey/protocols.h"

namespace ramsey {

/// Projection-noise limit for L unentangled ions: 1 / sqrt(L T_R tau).
double shot_noise_limit(int n_ions, double t_ramsey, double tau);
/// Limit for the GHZ state: 1 / (L sqrt(T_R tau)).
double heisenberg_limit(int n_ions, double t_ramsey, double tau);

struct BenchOptions {
    std::uint64_t seed = 0;
    int threads = 1;
    /// GHZ readout used as the entangled protocol.
    Protocol ghz_readout = Protocol::GhzFinalPulse;
};

/// Frequency uncertainty at the half-fringe operating point from `trials`
/// sampled trials. The fringe contrast comes from a Monte Carlo slope
/// measurement over the same trajectories, so dephasing enters only through
/// simulation.
struct OperatingPoint {
    EstimateRecord estimate;
    double contrast = 0;
};

OperatingPoint measure_operating_point(RamseyConfig cfg, Protocol protocol, std::int64_t trials,
                                       const BenchOptions &options);

struct ScalingRow {
    Protocol protocol = Protocol::Standard;
    int n_ions = 1;
    double t_ramsey = 0;
    /// Sum of T_R over trials; dead time is not charged.
    double tau = 0;
    std::int64_t trials = 0;
    double sigma = 0;
    double limit = 0;
    double ratio = 0;
};

/// Least-squares line through (log L, log sigma).
struct ScalingFit {
    Protocol protocol = Protocol::Standard;
    double slope = 0;
    double slope_stderr = 0;
    /// Half-width of the 95% interval; infinite with fewer than three ion counts.
    double slope_ci95 = 0;
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    std::vector<ScalingFit> fits;
    std::uint64_t seed = 0;
};

/// Standard and GHZ Ramsey at each ion count, template T_R, half-fringe
/// operating point. Trial streams are keyed only by trial index, so every
/// point sees the same random numbers.
ScalingReport scan_scaling(std::span<const int> ion_counts, const RamseyConfig &cfg_template, std::int64_t trials,
                           const BenchOptions &options);

struct DephasingPoint {
    Protocol protocol = Protocol::Standard;
    double t_ramsey = 0;
    /// sigma(dw) * sqrt(tau).
    double sigma_sqrt_tau = 0;
    double contrast = 0;
    bool refinement = false;
};

struct DephasingOptimum {
    Protocol protocol = Protocol::Standard;
    double t_opt = 0;
    double min_value = 0;
    /// Coarse minimum sat at the end of the grid; no refinement was done.
    bool at_boundary = false;
};

struct DephasingReport {
    double gamma = 0;
    int n_ions = 1;
    DephasingMode mode = DephasingMode::Independent;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<DephasingPoint> points;
    DephasingOptimum standard;
    DephasingOptimum ghz;
    /// T_R*(GHZ) / T_R*(standard).
    double argmin_ratio = 0;
    /// min(GHZ) / min(standard).
    double min_ratio = 0;
};

/// sigma * sqrt(tau) against T_R for both protocols under dephasing rate
/// `gamma`: coarse grid, then golden-section refinement between the
/// neighbours of the coarse minimum.
DephasingReport dephasing_benchmark(double gamma, int n_ions, std::span<const double> t_grid, std::int64_t trials,
                                    const BenchOptions &options, DephasingMode mode = DephasingMode::Independent);

}  // namespace ramsey
