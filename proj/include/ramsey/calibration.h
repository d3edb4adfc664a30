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
#include <functional>

#include "ramsey/protocols.h"

namespace ramsey {

/// Measured GHZ signal <normalized parity> for a reference frequency, a
/// free-evolution time and a controllable readout phase.
using SignalSimulator = std::function<double(double omega_r, double t_ramsey, double final_phase)>;

/// Ground truth for calibration runs.
struct TruthModel {
    /// Ion count, readout protocol, dephasing and imperfection come from here;
    /// its omega_r, t_ramsey and final_phase are overwritten per query.
    RamseyConfig base;
    Protocol protocol = Protocol::GhzFinalPulse;
    double omega_0 = 0;
    /// Unknown readout phase offset added to the controllable phase.
    double phase_offset = 0;
    /// T_R-dependent contrast factor B(T_R) > 0 (systematic bias).
    std::function<double(double)> bias = [](double) { return 1.0; };
    /// Exact expectations when true, otherwise `base.shots` sampled trials per query.
    bool expectation = true;
    std::uint64_t seed = 0;
};

/// Simulator for a truth model. In sampled mode the bias is applied by
/// replacing each outcome with a fair coin flip with probability 1 - B(T_R);
/// successive queries use consecutive seeds.
SignalSimulator make_signal_simulator(const TruthModel &truth);

struct CalibrationState {
    double omega_r1 = 0;
    double omega_r2 = 0;
    double t_r1 = 0;
    double t_r2 = 0;
    double final_phase = 0;
    int iterations = 0;

    /// (omega_r1 + omega_r2) / 2.
    double omega_0_estimate() const {
        return 0.5 * (omega_r1 + omega_r2);
    }
    /// Checks T_R2/T_R1 >= 10 and that the pair half-width keeps the long
    /// fringe unambiguous: L (omega_r2 - omega_r1)/2 T_R2 < pi/2.
    void validate(int n_ions) const;
};

struct CalibrationOptions {
    int n_ions = 1;
    /// Stop when the pair centre moves less than this (rad/s). Zero selects
    /// 1e-3 of the fringe width pi / (L T_R2).
    double tolerance = 0;
    int max_iterations = 50;
    /// Relative tolerance for "signals equal" in each nulling step.
    double equality_tolerance = 1e-14;
};

/// Iterates the two nulling steps:
///  (1) at T_R1, adjust the readout phase until S(omega_r1) = S(omega_r2);
///  (2) at T_R2, shift both reference frequencies by the same amount until
///      S(omega_r1) = S(omega_r2), i.e. omega_r1 - omega_0 = -(omega_r2 - omega_0).
/// Equality of two signals taken at the same T_R is unaffected by any
/// positive contrast factor B(T_R), so the result is free of that bias.
/// Throws NonConvergence after max_iterations and AmbiguousFringe when the
/// long-T_R pair lands on the inverted fringe.
CalibrationState two_point_calibrate(const SignalSimulator &measure, CalibrationState start,
                                     const CalibrationOptions &options);

/// Reference estimator: one signal at (omega_r, T_R), inverted assuming unit
/// contrast and the given readout phase on the branch cos^{-1} in [0, pi].
/// Returns the inferred omega_0.
double naive_single_point_estimate(const SignalSimulator &measure, double omega_r, double t_ramsey,
                                   double final_phase, int n_ions);

}  // namespace ramsey
