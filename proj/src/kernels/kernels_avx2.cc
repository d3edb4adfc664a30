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

// Compiled with -mavx2 -mfma. Nothing in this file may run before the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include "src/kernels/kernels_internal.h"

namespace ramsey::kernels {

namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

inline void store2(cplx *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

// Lane-wise complex product of v with (c_re, c_im), where the coefficient
// vectors already hold each complex factor duplicated across its re/im lanes.
inline __m256d cmul(__m256d v, __m256d c_re, __m256d c_im) {
    __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(v, c_re, _mm256_mul_pd(swapped, c_im));
}

inline __m256d splat_re(cplx c) {
    return _mm256_set1_pd(c.real());
}

inline __m256d splat_im(cplx c) {
    return _mm256_set1_pd(c.imag());
}

// [c0, c1] as per-lane coefficient pair.
inline __m256d pair_re(cplx c0, cplx c1) {
    return _mm256_setr_pd(c0.real(), c0.real(), c1.real(), c1.real());
}

inline __m256d pair_im(cplx c0, cplx c1) {
    return _mm256_setr_pd(c0.imag(), c0.imag(), c1.imag(), c1.imag());
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// |c|^2 for four consecutive amplitudes, in order.
inline __m256d norms4(const cplx *p) {
    __m256d v1 = load2(p);
    __m256d v2 = load2(p + 2);
    __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v1, v1), _mm256_mul_pd(v2, v2));
    return _mm256_permute4x64_pd(h, 0b11011000);
}

void avx2_apply_1q(std::span<cplx> amps, std::size_t stride, const Mat2 &m) {
    const std::size_t n = amps.size();
    cplx *a = amps.data();
    if (stride == 1) {
        if (n < 2) {
            return;
        }
        const __m256d left_re = pair_re(m.m00, m.m10), left_im = pair_im(m.m00, m.m10);
        const __m256d right_re = pair_re(m.m01, m.m11), right_im = pair_im(m.m01, m.m11);
        for (std::size_t i = 0; i < n; i += 2) {
            __m256d v = load2(a + i);
            __m256d lo = _mm256_permute2f128_pd(v, v, 0x00);
            __m256d hi = _mm256_permute2f128_pd(v, v, 0x11);
            store2(a + i, _mm256_add_pd(cmul(lo, left_re, left_im), cmul(hi, right_re, right_im)));
        }
        return;
    }
    const __m256d m00r = splat_re(m.m00), m00i = splat_im(m.m00);
    const __m256d m01r = splat_re(m.m01), m01i = splat_im(m.m01);
    const __m256d m10r = splat_re(m.m10), m10i = splat_im(m.m10);
    const __m256d m11r = splat_re(m.m11), m11i = splat_im(m.m11);
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; i += 2) {
            __m256d a0 = load2(a + i);
            __m256d a1 = load2(a + i + stride);
            store2(a + i, _mm256_add_pd(cmul(a0, m00r, m00i), cmul(a1, m01r, m01i)));
            store2(a + i + stride, _mm256_add_pd(cmul(a0, m10r, m10i), cmul(a1, m11r, m11i)));
        }
    }
}

void avx2_apply_bit_phase(std::span<cplx> amps, std::size_t stride, cplx phase) {
    const std::size_t n = amps.size();
    cplx *a = amps.data();
    if (stride == 1) {
        if (n < 2) {
            return;
        }
        const __m256d c_re = pair_re(1.0, phase), c_im = pair_im(1.0, phase);
        for (std::size_t i = 0; i < n; i += 2) {
            store2(a + i, cmul(load2(a + i), c_re, c_im));
        }
        return;
    }
    const __m256d c_re = splat_re(phase), c_im = splat_im(phase);
    for (std::size_t base = stride; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; i += 2) {
            store2(a + i, cmul(load2(a + i), c_re, c_im));
        }
    }
}

void avx2_probabilities(std::span<const cplx> amps, std::span<double> out) {
    const std::size_t n = amps.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out.data() + i, norms4(amps.data() + i));
    }
    for (; i < n; ++i) {
        out[i] = std::norm(amps[i]);
    }
}

double avx2_norm_squared(std::span<const cplx> amps) {
    const std::size_t n = amps.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = load2(amps.data() + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        total += std::norm(amps[i]);
    }
    return total;
}

double avx2_weighted_norm(std::span<const cplx> amps, std::span<const double> weights) {
    const std::size_t n = amps.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(norms4(amps.data() + i), _mm256_loadu_pd(weights.data() + i), acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        total += weights[i] * std::norm(amps[i]);
    }
    return total;
}

}  // namespace

const KernelTable &avx2_table() {
    // Permutation kernels are memory-bound; the scalar versions are reused.
    static const KernelTable table{
        "avx2",
        avx2_apply_1q,
        avx2_apply_bit_phase,
        scalar_apply_cnot,
        scalar_apply_swap,
        avx2_probabilities,
        avx2_norm_squared,
        avx2_weighted_norm,
    };
    return table;
}

}  // namespace ramsey::kernels
