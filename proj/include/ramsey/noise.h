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

#include <map>
#include <span>
#include <vector>

#include "ramsey/register.h"
#include "ramsey/rng.h"

namespace ramsey {

enum class DephasingMode { Independent, Common };

/// Gaussian phase diffusion during free evolution. Each ion's accumulated
/// phase has zero mean and variance 2 * gamma * t, so a single ion's coherence
/// decays as exp(-gamma t). In common mode one draw is shared by all ions.
struct NoiseSpec {
    double gamma = 0;
    DephasingMode mode = DephasingMode::Independent;

    bool active() const {
        return gamma > 0;
    }
    void validate() const;
};

double dephasing_variance(const NoiseSpec &spec, double t);

/// E[cos(sum of `n_summed` ion phases)] after time t: the factor by which a
/// coherence spanning that many ions shrinks on average.
double coherence_factor(const NoiseSpec &spec, double t, int n_summed);

/// Phases (radians) for each of `n_ions` ions over an interval `t`.
std::vector<double> sample_dephasing_phases(const NoiseSpec &spec, double t, int n_ions, RngStream &rng);

/// Every |up> of ion i contributes exp(i phases[i-1]).
QubitRegister apply_phase_noise(QubitRegister reg, std::span<const double> phases);

/// Coherent admixtures of symmetric (Dicke) states with p excitations,
/// 0 < p < L, added to an ideal GHZ state before renormalization.
struct ImperfectionSpec {
    /// Keyed by excitation number p.
    std::map<int, cplx> admixture;
    /// When set, each admixture keeps its magnitude but takes a phase drawn
    /// from the stream passed to perturb_ghz.
    bool random_phases = false;

    bool active() const;
    void validate(int n_ions) const;
};

/// Normalized symmetric state with `excitations` ions up (bus in |0>).
QubitRegister dicke_state(int n_ions, bool has_bus, int excitations);

/// Adds the admixtures and renormalizes. Identity when every amplitude is 0.
/// Throws InvalidArgument if the sum has zero norm.
QubitRegister perturb_ghz(QubitRegister reg, const ImperfectionSpec &spec, RngStream &rng);

/// |<a|b>|^2.
double fidelity(const QubitRegister &a, const QubitRegister &b);

}  // namespace ramsey
