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

#include <span>
#include <vector>

namespace ramsey {

/// Least-squares decomposition S(T) = offset + sum_p C_p cos(p dw T + xi_p).
struct FourierFit {
    int n_harmonics = 0;
    double delta_omega = 0;
    double offset = 0;
    /// amplitude[p - 1] = C_p >= 0, phase[p - 1] = xi_p in (-pi, pi].
    std::vector<double> amplitude;
    std::vector<double> phase;
    /// Euclidean norm of the fit residual over the grid.
    double residual_norm = 0;
    std::size_t n_samples = 0;

    double amplitude_of(int p) const {
        return amplitude.at(static_cast<std::size_t>(p - 1));
    }
    double phase_of(int p) const {
        return phase.at(static_cast<std::size_t>(p - 1));
    }
};

/// Fits harmonics p = 1..n_harmonics of `delta_omega` plus a constant to
/// samples on a uniform T_R grid. The grid must cover one full period of the
/// slowest component (N * step >= 2 pi / |dw|) with at least 2L + 1 samples
/// (Underdetermined otherwise); a singular design matrix raises RankDeficient.
FourierFit fourier_decompose(std::span<const double> t_grid, std::span<const double> signal, int n_harmonics,
                             double delta_omega);

/// Evaluates a fit on a grid.
std::vector<double> synthesize(const FourierFit &fit, std::span<const double> t_grid);

/// Single-sinusoid fit S ~ a cos(w T) + b sin(w T) + c with the frequency free.
struct FrequencyFit {
    double omega = 0;
    double amplitude = 0;
    double phase = 0;
    double offset = 0;
    double residual_norm = 0;
};

/// Searches w in [omega_lo, omega_hi]: coarse scan of the variable-projection
/// residual, golden-section refinement, then Gauss-Newton on all four parameters.
FrequencyFit fit_fringe_frequency(std::span<const double> t_grid, std::span<const double> signal, double omega_lo,
                                  double omega_hi);

/// Whether a small-change measurement at fixed T_R keeps the entangled-state
/// benefit: every C_p with p < L must stay below `threshold`.
struct ChangeDetectionCheck {
    bool holds = true;
    int worst_harmonic = 0;
    double worst_amplitude = 0;
    double threshold = 0;
};

ChangeDetectionCheck check_change_detection(const FourierFit &fit, double threshold = 0.1);

/// Extra measurements a Fourier decomposition costs relative to one operating
/// point: the number of grid samples.
inline double fourier_measurement_overhead(const FourierFit &fit) {
    return static_cast<double>(fit.n_samples);
}

}  // namespace ramsey
