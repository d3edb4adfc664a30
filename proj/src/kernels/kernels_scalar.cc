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

#include "ramsey/kernels.h"
#include "src/kernels/kernels_internal.h"

namespace ramsey::kernels {

void scalar_apply_1q(std::span<cplx> amps, std::size_t stride, const Mat2 &m) {
    const std::size_t n = amps.size();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            cplx a0 = amps[i];
            cplx a1 = amps[i + stride];
            amps[i] = m.m00 * a0 + m.m01 * a1;
            amps[i + stride] = m.m10 * a0 + m.m11 * a1;
        }
    }
}

void scalar_apply_bit_phase(std::span<cplx> amps, std::size_t stride, cplx phase) {
    const std::size_t n = amps.size();
    for (std::size_t base = stride; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            amps[i] *= phase;
        }
    }
}

void scalar_apply_cnot(std::span<cplx> amps, std::size_t control_stride, std::size_t target_stride) {
    const std::size_t n = amps.size();
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & control_stride) && !(i & target_stride)) {
            std::swap(amps[i], amps[i | target_stride]);
        }
    }
}

void scalar_apply_swap(std::span<cplx> amps, std::size_t stride_a, std::size_t stride_b) {
    const std::size_t n = amps.size();
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & stride_a) && !(i & stride_b)) {
            std::swap(amps[i], amps[(i & ~stride_a) | stride_b]);
        }
    }
}

void scalar_probabilities(std::span<const cplx> amps, std::span<double> out) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out[i] = std::norm(amps[i]);
    }
}

double scalar_norm_squared(std::span<const cplx> amps) {
    double total = 0;
    for (const cplx &a : amps) {
        total += std::norm(a);
    }
    return total;
}

double scalar_weighted_norm(std::span<const cplx> amps, std::span<const double> weights) {
    double total = 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        total += weights[i] * std::norm(amps[i]);
    }
    return total;
}

const KernelTable &scalar() {
    static const KernelTable table{
        "scalar",
        scalar_apply_1q,
        scalar_apply_bit_phase,
        scalar_apply_cnot,
        scalar_apply_swap,
        scalar_probabilities,
        scalar_norm_squared,
        scalar_weighted_norm,
    };
    return table;
}

}  // namespace ramsey::kernels
