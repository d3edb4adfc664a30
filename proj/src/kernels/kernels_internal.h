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

#include "ramsey/kernels.h"

namespace ramsey::kernels {

void scalar_apply_1q(std::span<cplx> amps, std::size_t stride, const Mat2 &m);
void scalar_apply_bit_phase(std::span<cplx> amps, std::size_t stride, cplx phase);
void scalar_apply_cnot(std::span<cplx> amps, std::size_t control_stride, std::size_t target_stride);
void scalar_apply_swap(std::span<cplx> amps, std::size_t stride_a, std::size_t stride_b);
void scalar_probabilities(std::span<const cplx> amps, std::span<double> out);
double scalar_norm_squared(std::span<const cplx> amps);
double scalar_weighted_norm(std::span<const cplx> amps, std::span<const double> weights);

#if RAMSEY_HAVE_AVX2
const KernelTable &avx2_table();
#endif

}  // namespace ramsey::kernels
