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

#include <complex>
#include <cstddef>
#include <span>

namespace ramsey {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix acting on one qubit: |0> is the first basis vector.
struct Mat2 {
    cplx m00, m01, m10, m11;
};

namespace kernels {

/// Inner loops over a dense amplitude vector. Every variant must agree with
/// the scalar reference to rounding; `stride` is `1 << bit` for the bit the
/// operation acts on.
struct KernelTable {
    const char *name;
    /// Applies `m` to every (i, i + stride) amplitude pair with bit clear at i.
    void (*apply_1q)(std::span<cplx> amps, std::size_t stride, const Mat2 &m);
    /// Multiplies every amplitude whose `stride` bit is set by `phase`.
    void (*apply_bit_phase)(std::span<cplx> amps, std::size_t stride, cplx phase);
    /// Flips the target bit wherever the control bit is set.
    void (*apply_cnot)(std::span<cplx> amps, std::size_t control_stride, std::size_t target_stride);
    /// Exchanges the values of two bits.
    void (*apply_swap)(std::span<cplx> amps, std::size_t stride_a, std::size_t stride_b);
    /// out[i] = |amps[i]|^2.
    void (*probabilities)(std::span<const cplx> amps, std::span<double> out);
    double (*norm_squared)(std::span<const cplx> amps);
    /// Sum over i of w[i] * |amps[i]|^2.
    double (*weighted_norm)(std::span<const cplx> amps, std::span<const double> weights);
};

const KernelTable &scalar();

/// AVX2+FMA variant, or nullptr when it was not compiled in or the CPU lacks it.
const KernelTable *avx2();

/// The table used by the library. Chosen once at startup: AVX2 when available,
/// unless the environment variable RAMSEY_KERNELS=scalar forces the reference.
const KernelTable &active();

/// Overrides the active table (tests and benchmarks). Pass nullptr to restore
/// the startup choice.
void set_active(const KernelTable *table);

}  // namespace kernels
}  // namespace ramsey
