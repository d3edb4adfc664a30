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

#include <random>
#include <vector>

#include "gtest/gtest.h"

using namespace ramsey;

namespace {

std::vector<cplx> random_amplitudes(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (auto &a : v) {
        a = {g(rng), g(rng)};
    }
    return v;
}

Mat2 random_matrix(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    return Mat2{{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
}

double max_diff(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

struct Variants {
    std::vector<const kernels::KernelTable *> tables;
    Variants() {
        if (kernels::avx2() != nullptr) {
            tables.push_back(kernels::avx2());
        }
    }
};

}  // namespace

TEST(kernels, active_is_known_variant) {
    const auto &k = kernels::active();
    EXPECT_TRUE(&k == &kernels::scalar() || &k == kernels::avx2());
}

TEST(kernels, simd_apply_1q_matches_scalar) {
    Variants v;
    if (v.tables.empty()) {
        GTEST_SKIP() << "no SIMD variant on this CPU";
    }
    std::mt19937_64 rng(7);
    for (const auto *table : v.tables) {
        for (int bits = 1; bits <= 10; ++bits) {
            for (int bit = 0; bit < bits; ++bit) {
                auto ref = random_amplitudes(std::size_t{1} << bits, rng);
                auto got = ref;
                Mat2 m = random_matrix(rng);
                kernels::scalar().apply_1q(ref, std::size_t{1} << bit, m);
                table->apply_1q(got, std::size_t{1} << bit, m);
                ASSERT_LT(max_diff(ref, got), 1e-13) << table->name << " bits=" << bits << " bit=" << bit;
            }
        }
    }
}

TEST(kernels, simd_bit_phase_matches_scalar) {
    Variants v;
    if (v.tables.empty()) {
        GTEST_SKIP() << "no SIMD variant on this CPU";
    }
    std::mt19937_64 rng(8);
    for (const auto *table : v.tables) {
        for (int bits = 1; bits <= 10; ++bits) {
            for (int bit = 0; bit < bits; ++bit) {
                auto ref = random_amplitudes(std::size_t{1} << bits, rng);
                auto got = ref;
                cplx phase = std::polar(1.0, 0.3 * bit + 0.1);
                kernels::scalar().apply_bit_phase(ref, std::size_t{1} << bit, phase);
                table->apply_bit_phase(got, std::size_t{1} << bit, phase);
                ASSERT_LT(max_diff(ref, got), 1e-14) << table->name << " bits=" << bits << " bit=" << bit;
            }
        }
    }
}

TEST(kernels, simd_reductions_match_scalar) {
    Variants v;
    if (v.tables.empty()) {
        GTEST_SKIP() << "no SIMD variant on this CPU";
    }
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const auto *table : v.tables) {
        // Odd lengths exercise the scalar tails.
        for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 31u, 64u, 1025u}) {
            auto amps = random_amplitudes(n, rng);
            std::vector<double> weights(n);
            for (auto &w : weights) {
                w = u(rng);
            }
            std::vector<double> p_ref(n), p_got(n);
            kernels::scalar().probabilities(amps, p_ref);
            table->probabilities(amps, p_got);
            for (std::size_t i = 0; i < n; ++i) {
                ASSERT_NEAR(p_ref[i], p_got[i], 1e-13 * (1 + p_ref[i]));
            }
            double ref = kernels::scalar().norm_squared(amps);
            EXPECT_NEAR(table->norm_squared(amps), ref, 1e-12 * ref);
            double wref = kernels::scalar().weighted_norm(amps, weights);
            EXPECT_NEAR(table->weighted_norm(amps, weights), wref, 1e-12 * ref);
        }
    }
}

TEST(kernels, permutations_are_exact) {
    std::mt19937_64 rng(10);
    for (const auto *table : {&kernels::scalar(), kernels::avx2()}) {
        if (table == nullptr) {
            continue;
        }
        auto amps = random_amplitudes(16, rng);
        auto original = amps;
        table->apply_cnot(amps, 8, 1);
        for (std::size_t i = 0; i < 16; ++i) {
            std::size_t src = (i & 8) ? (i ^ 1) : i;
            ASSERT_EQ(amps[i], original[src]);
        }
        amps = original;
        table->apply_swap(amps, 4, 1);
        for (std::size_t i = 0; i < 16; ++i) {
            std::size_t b2 = (i >> 2) & 1, b0 = i & 1;
            std::size_t src = (i & ~std::size_t{5}) | (b2 << 0) | (b0 << 2);
            ASSERT_EQ(amps[i], original[src]);
        }
    }
}

TEST(kernels, override_restores_startup_choice) {
    const auto *before = &kernels::active();
    kernels::set_active(&kernels::scalar());
    EXPECT_EQ(&kernels::active(), &kernels::scalar());
    kernels::set_active(nullptr);
    EXPECT_EQ(&kernels::active(), before);
}
