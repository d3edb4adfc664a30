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

#include "ramsey/register.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "ramsey/error.h"

namespace ramsey {

namespace {

void check_ion_count(int n_ions) {
    if (n_ions < 1 || n_ions > kMaxIons) {
        throw Error(ErrorKind::Capacity, "ion count " + std::to_string(n_ions) + " outside [1, " +
                                             std::to_string(kMaxIons) + "]");
    }
}

}  // namespace

QubitRegister::QubitRegister(int n_ions, bool has_bus) : n_ions_(n_ions), has_bus_(has_bus) {
    check_ion_count(n_ions);
    amps_.assign(std::size_t{1} << n_bits(), cplx{0, 0});
    amps_[0] = 1;
}

QubitRegister QubitRegister::from_amplitudes(int n_ions, bool has_bus, std::vector<cplx> amplitudes) {
    check_ion_count(n_ions);
    QubitRegister reg;
    reg.n_ions_ = n_ions;
    reg.has_bus_ = has_bus;
    if (amplitudes.size() != (std::size_t{1} << reg.n_bits())) {
        throw Error(ErrorKind::InvalidArgument, "amplitude vector length does not match register size");
    }
    reg.amps_ = std::move(amplitudes);
    if (std::abs(reg.norm_squared() - 1.0) > kStateTolerance) {
        throw Error(ErrorKind::InvalidArgument, "amplitudes are not normalized");
    }
    return reg;
}

std::size_t QubitRegister::ion_stride(int ion) const {
    if (ion < 1 || ion > n_ions_) {
        throw Error(ErrorKind::InvalidArgument, "ion index " + std::to_string(ion) + " outside [1, " +
                                                    std::to_string(n_ions_) + "]");
    }
    return std::size_t{1} << (n_bits() - ion);
}

std::size_t QubitRegister::bus_stride() const {
    if (!has_bus_) {
        throw Error(ErrorKind::Protocol, "register has no motional bus");
    }
    return 1;
}

std::size_t QubitRegister::ion_mask() const {
    std::size_t all = (std::size_t{1} << n_bits()) - 1;
    return has_bus_ ? (all & ~std::size_t{1}) : all;
}

int QubitRegister::excitations(std::size_t basis) const {
    return std::popcount(basis & ion_mask());
}

bool QubitRegister::ion_is_up(std::size_t basis, int ion) const {
    return (basis & ion_stride(ion)) != 0;
}

std::size_t QubitRegister::basis_index(std::span<const int> up_ions) const {
    std::size_t index = 0;
    for (int ion : up_ions) {
        index |= ion_stride(ion);
    }
    return index;
}

double QubitRegister::norm_squared() const {
    return kernels::active().norm_squared(amps_);
}

QubitRegister new_register(int n_ions, bool has_bus) {
    return QubitRegister(n_ions, has_bus);
}

void PulseSpec::validate(int n_ions) const {
    if (targets.empty()) {
        throw Error(ErrorKind::InvalidArgument, "pulse has no target ions");
    }
    std::set<int> seen;
    for (int t : targets) {
        if (t < 1 || t > n_ions) {
            throw Error(ErrorKind::InvalidArgument, "pulse target " + std::to_string(t) + " outside [1, " +
                                                        std::to_string(n_ions) + "]");
        }
        if (!seen.insert(t).second) {
            throw Error(ErrorKind::InvalidArgument, "pulse target " + std::to_string(t) + " repeated");
        }
    }
    if (!phase_offsets.empty() && phase_offsets.size() != targets.size()) {
        throw Error(ErrorKind::InvalidArgument, "phase_offsets length must match targets");
    }
}

PulseSpec PulseSpec::all(int n_ions, double theta, double phi) {
    PulseSpec p{theta, phi, {}, {}};
    for (int i = 1; i <= n_ions; ++i) {
        p.targets.push_back(i);
    }
    return p;
}

PulseSpec PulseSpec::single(int ion, double theta, double phi) {
    return PulseSpec{theta, phi, {ion}, {}};
}

Mat2 rotation_matrix(double theta, double phi) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const cplx minus_i{0, -1};
    return Mat2{
        c,
        minus_i * std::polar(1.0, -phi) * s,
        minus_i * std::polar(1.0, phi) * s,
        c,
    };
}

QubitRegister apply_rotation(QubitRegister reg, const PulseSpec &pulse) {
    pulse.validate(reg.n_ions());
    const auto &k = kernels::active();
    for (std::size_t j = 0; j < pulse.targets.size(); ++j) {
        double phi = pulse.phi + (pulse.phase_offsets.empty() ? 0.0 : pulse.phase_offsets[j]);
        k.apply_1q(reg.amplitudes(), reg.ion_stride(pulse.targets[j]), rotation_matrix(pulse.theta, phi));
    }
    return reg;
}

QubitRegister free_evolve(QubitRegister reg, double delta_omega, double t) {
    if (!(t >= 0)) {
        throw Error(ErrorKind::InvalidArgument, "free evolution time must be >= 0");
    }
    if (delta_omega == 0 || t == 0) {
        return reg;
    }
    const cplx phase = std::polar(1.0, delta_omega * t);
    const auto &k = kernels::active();
    for (int ion = 1; ion <= reg.n_ions(); ++ion) {
        k.apply_bit_phase(reg.amplitudes(), reg.ion_stride(ion), phase);
    }
    return reg;
}

double ObservableValue::normalized() const {
    if (kind == ObservableKind::Jz) {
        return 2.0 * value / n_ions;
    }
    return std::ldexp(value, n_ions);
}

ObservableValue expect_jz(const QubitRegister &reg) {
    std::vector<double> weights(reg.dimension());
    const int n = reg.n_ions();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        int up = reg.excitations(i);
        weights[i] = 0.5 * (up - (n - up));
    }
    return {ObservableKind::Jz, n, kernels::active().weighted_norm(reg.amplitudes(), weights)};
}

ObservableValue expect_parity(const QubitRegister &reg) {
    std::vector<double> weights(reg.dimension());
    const int n = reg.n_ions();
    const double magnitude = std::ldexp(1.0, -n);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        int down = n - reg.excitations(i);
        weights[i] = (down % 2 == 0) ? magnitude : -magnitude;
    }
    return {ObservableKind::Parity, n, kernels::active().weighted_norm(reg.amplitudes(), weights)};
}

double expect_ion_sz(const QubitRegister &reg, int ion) {
    const std::size_t stride = reg.ion_stride(ion);
    std::vector<double> weights(reg.dimension());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] = (i & stride) ? 0.5 : -0.5;
    }
    return kernels::active().weighted_norm(reg.amplitudes(), weights);
}

Outcome outcome_from_basis(int n_ions, bool has_bus, std::size_t basis) {
    std::size_t ions = has_bus ? (basis >> 1) : basis;
    int up = std::popcount(ions);
    int down = n_ions - up;
    return Outcome{basis, ions, down, (down % 2 == 0) ? 1 : -1};
}

BornSampler::BornSampler(const QubitRegister &reg)
    : n_ions_(reg.n_ions()), has_bus_(reg.has_bus()), probs_(reg.dimension()), cdf_(reg.dimension()) {
    kernels::active().probabilities(reg.amplitudes(), probs_);
    double running = 0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        running += probs_[i];
        cdf_[i] = running;
    }
}

std::size_t BornSampler::sample(double uniform01) const {
    const double target = uniform01 * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    if (it == cdf_.end()) {
        --it;
    }
    return static_cast<std::size_t>(it - cdf_.begin());
}

Outcome BornSampler::draw(RngStream &rng) const {
    return outcome_from_basis(n_ions_, has_bus_, sample(rng.uniform()));
}

std::vector<Outcome> sample_measurement(const QubitRegister &reg, RngStream &rng, std::int64_t shots) {
    if (shots < 1) {
        throw Error(ErrorKind::InvalidArgument, "shots must be >= 1");
    }
    BornSampler sampler(reg);
    std::vector<Outcome> out;
    out.reserve(static_cast<std::size_t>(shots));
    for (std::int64_t s = 0; s < shots; ++s) {
        out.push_back(sampler.draw(rng));
    }
    return out;
}

}  // namespace ramsey
