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

#include "ramsey/noise.h"

#include <cmath>
#include <numbers>
#include <string>

#include "ramsey/error.h"

namespace ramsey {

void NoiseSpec::validate() const {
    if (!(gamma >= 0) || !std::isfinite(gamma)) {
        throw Error(ErrorKind::InvalidArgument, "dephasing rate must be finite and >= 0");
    }
}

double dephasing_variance(const NoiseSpec &spec, double t) {
    return 2.0 * spec.gamma * t;
}

double coherence_factor(const NoiseSpec &spec, double t, int n_summed) {
    const double var = dephasing_variance(spec, t);
    const double n = n_summed;
    if (spec.mode == DephasingMode::Independent) {
        return std::exp(-0.5 * n * var);
    }
    return std::exp(-0.5 * n * n * var);
}

std::vector<double> sample_dephasing_phases(const NoiseSpec &spec, double t, int n_ions, RngStream &rng) {
    spec.validate();
    if (!(t >= 0)) {
        throw Error(ErrorKind::InvalidArgument, "dephasing interval must be >= 0");
    }
    std::vector<double> phases(static_cast<std::size_t>(n_ions), 0.0);
    if (!spec.active() || t == 0) {
        return phases;
    }
    const double sigma = std::sqrt(dephasing_variance(spec, t));
    if (spec.mode == DephasingMode::Common) {
        const double shared = sigma * rng.normal();
        std::fill(phases.begin(), phases.end(), shared);
    } else {
        for (double &p : phases) {
            p = sigma * rng.normal();
        }
    }
    return phases;
}

QubitRegister apply_phase_noise(QubitRegister reg, std::span<const double> phases) {
    if (phases.size() != static_cast<std::size_t>(reg.n_ions())) {
        throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(reg.n_ions()) + " phases, got " +
                                                    std::to_string(phases.size()));
    }
    const auto &k = kernels::active();
    for (int ion = 1; ion <= reg.n_ions(); ++ion) {
        double phi = phases[static_cast<std::size_t>(ion - 1)];
        if (phi != 0) {
            k.apply_bit_phase(reg.amplitudes(), reg.ion_stride(ion), std::polar(1.0, phi));
        }
    }
    return reg;
}

bool ImperfectionSpec::active() const {
    for (const auto &[p, eps] : admixture) {
        if (eps != cplx{0, 0}) {
            return true;
        }
    }
    return false;
}

void ImperfectionSpec::validate(int n_ions) const {
    for (const auto &[p, eps] : admixture) {
        if (p < 1 || p >= n_ions) {
            throw Error(ErrorKind::InvalidArgument,
                        "admixture excitation number " + std::to_string(p) + " outside [1, L-1]");
        }
        if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag())) {
            throw Error(ErrorKind::InvalidArgument, "admixture amplitudes must be finite");
        }
    }
}

QubitRegister dicke_state(int n_ions, bool has_bus, int excitations) {
    QubitRegister reg(n_ions, has_bus);
    if (excitations < 0 || excitations > n_ions) {
        throw Error(ErrorKind::InvalidArgument, "Dicke excitation number out of range");
    }
    auto amps = reg.amplitudes();
    amps[0] = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & ~reg.ion_mask()) == 0 && reg.excitations(i) == excitations) {
            ++count;
        }
    }
    const double a = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & ~reg.ion_mask()) == 0 && reg.excitations(i) == excitations) {
            amps[i] = a;
        }
    }
    return reg;
}

QubitRegister perturb_ghz(QubitRegister reg, const ImperfectionSpec &spec, RngStream &rng) {
    spec.validate(reg.n_ions());
    if (!spec.active()) {
        return reg;
    }
    auto amps = reg.amplitudes();
    for (const auto &[p, eps] : spec.admixture) {
        cplx weight = eps;
        if (spec.random_phases) {
            weight = std::polar(std::abs(eps), 2 * std::numbers::pi * rng.uniform());
        }
        QubitRegister component = dicke_state(reg.n_ions(), reg.has_bus(), p);
        auto c = component.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] += weight * c[i];
        }
    }
    const double norm2 = kernels::scalar().norm_squared(amps);
    if (!(norm2 > 1e-300)) {
        throw Error(ErrorKind::InvalidArgument, "perturbed state has zero norm");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (cplx &a : amps) {
        a *= scale;
    }
    return reg;
}

double fidelity(const QubitRegister &a, const QubitRegister &b) {
    if (a.dimension() != b.dimension()) {
        throw Error(ErrorKind::InvalidArgument, "fidelity of registers with different sizes");
    }
    cplx overlap = 0;
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        overlap += std::conj(x[i]) * y[i];
    }
    return std::norm(overlap);
}

}  // namespace ramsey
