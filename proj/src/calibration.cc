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

#include "ramsey/calibration.h"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "ramsey/error.h"

namespace ramsey {

namespace {

constexpr double kPi = std::numbers::pi;

// Root of f on [lo, hi], given a sign change. Throws AmbiguousFringe without one.
double null_difference(const std::function<double(double)> &f, double lo, double hi, double rel_tol,
                       const char *what) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0) {
        return lo;
    }
    if (f_hi == 0) {
        return hi;
    }
    if ((f_lo > 0) == (f_hi > 0)) {
        throw Error(ErrorKind::AmbiguousFringe, std::string("no sign change while nulling ") + what);
    }
    const double width = hi - lo;
    auto done = [&](double a, double b) { return std::abs(b - a) <= rel_tol * width; };
    std::uintmax_t max_iter = 200;
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, done, max_iter);
    return 0.5 * (a + b);
}

}  // namespace

SignalSimulator make_signal_simulator(const TruthModel &truth) {
    if (truth.expectation) {
        return [truth](double omega_r, double t_ramsey, double final_phase) {
            RamseyConfig cfg = truth.base;
            cfg.omega_r = omega_r;
            cfg.omega_0 = truth.omega_0;
            cfg.t_ramsey = t_ramsey;
            cfg.final_phase = final_phase + truth.phase_offset;
            return truth.bias(t_ramsey) * expected_signal(cfg, truth.protocol);
        };
    }
    auto query = std::make_shared<std::uint64_t>(0);
    return [truth, query](double omega_r, double t_ramsey, double final_phase) {
        RamseyConfig cfg = truth.base;
        cfg.omega_r = omega_r;
        cfg.omega_0 = truth.omega_0;
        cfg.t_ramsey = t_ramsey;
        cfg.final_phase = final_phase + truth.phase_offset;
        const std::uint64_t seed = truth.seed + (*query)++;
        auto records = run_trials(cfg, truth.protocol, seed, cfg.shots);
        const double keep = truth.bias(t_ramsey);
        double total = 0;
        for (const TrialRecord &r : records) {
            RngStream rng(seed, r.trial, StreamPurpose::Bias);
            if (rng.uniform() < keep) {
                total += r.signal;
            } else {
                total += rng.uniform() < 0.5 ? 1.0 : -1.0;
            }
        }
        return total / static_cast<double>(records.size());
    };
}

void CalibrationState::validate(int n_ions) const {
    if (!(t_r1 > 0) || !(t_r2 >= 10 * t_r1)) {
        throw Error(ErrorKind::InvalidArgument, "calibration needs T_R2 / T_R1 >= 10");
    }
    if (!(omega_r2 > omega_r1)) {
        throw Error(ErrorKind::InvalidArgument, "calibration needs omega_r1 < omega_r2");
    }
    const double half_width = 0.5 * (omega_r2 - omega_r1);
    if (n_ions * half_width * t_r2 >= kPi / 2) {
        throw Error(ErrorKind::AmbiguousFringe, "reference pair is wider than the unambiguous fringe at T_R2");
    }
}

CalibrationState two_point_calibrate(const SignalSimulator &measure, CalibrationState start,
                                     const CalibrationOptions &options) {
    const int n = options.n_ions;
    start.validate(n);
    const double half_width = 0.5 * (start.omega_r2 - start.omega_r1);
    const double fringe_width = kPi / (n * start.t_r2);
    const double tolerance = options.tolerance > 0 ? options.tolerance : 1e-3 * fringe_width;

    CalibrationState s = start;
    s.iterations = 0;
    double centre = s.omega_0_estimate();
    while (s.iterations < options.max_iterations) {
        ++s.iterations;

        // Step 1: difference at T_R1 as a function of the readout phase.
        auto d1 = [&](double phi) {
            return measure(centre - half_width, s.t_r1, phi) - measure(centre + half_width, s.t_r1, phi);
        };
        double phi = null_difference(d1, s.final_phase - kPi / 2, s.final_phase + kPi / 2,
                                     options.equality_tolerance, "the short-T_R pair");
        // Two nulls per period; keep the one with an upright fringe.
        if (measure(centre - half_width, s.t_r1, phi) + measure(centre + half_width, s.t_r1, phi) < 0) {
            phi += kPi;
        }
        s.final_phase = std::remainder(phi, 2 * kPi);

        // Step 2: difference at T_R2 as a function of a common frequency shift.
        auto d2 = [&](double shift) {
            return measure(centre + shift - half_width, s.t_r2, s.final_phase) -
                   measure(centre + shift + half_width, s.t_r2, s.final_phase);
        };
        const double window = kPi / (2 * n * s.t_r2);
        double shift = null_difference(d2, -window, window, options.equality_tolerance, "the long-T_R pair");
        const double sum = measure(centre + shift - half_width, s.t_r2, s.final_phase) +
                           measure(centre + shift + half_width, s.t_r2, s.final_phase);
        if (sum < 0) {
            throw Error(ErrorKind::AmbiguousFringe,
                        "long-T_R pair nulled on the inverted fringe; start closer to omega_0");
        }
        centre += shift;
        s.omega_r1 = centre - half_width;
        s.omega_r2 = centre + half_width;
        if (std::abs(shift) < tolerance) {
            return s;
        }
    }
    throw Error(ErrorKind::NonConvergence,
                "two-point calibration did not converge in " + std::to_string(options.max_iterations) + " iterations");
}

double naive_single_point_estimate(const SignalSimulator &measure, double omega_r, double t_ramsey,
                                   double final_phase, int n_ions) {
    const double s = std::clamp(measure(omega_r, t_ramsey, final_phase), -1.0, 1.0);
    const double x = std::acos(s);
    return omega_r - (x - final_phase) / (n_ions * t_ramsey);
}

}  // namespace ramsey
