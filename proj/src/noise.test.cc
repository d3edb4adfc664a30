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

#include "gtest/gtest.h"
#include "ramsey/error.h"
#include "ramsey/gates.h"

using namespace ramsey;

namespace {

// Monte Carlo mean of cos(sum of phases) with a 4 sigma tolerance.
struct CosMean {
    double mean;
    double tolerance;
};

CosMean mean_cos_of_sum(const NoiseSpec &spec, double t, int n_ions, int samples, std::uint64_t seed) {
    double sum = 0, sum2 = 0;
    for (int k = 0; k < samples; ++k) {
        RngStream rng(seed, k, StreamPurpose::Noise);
        double total = 0;
        for (double phi : sample_dephasing_phases(spec, t, n_ions, rng)) total += phi;
        double c = std::cos(total);
        sum += c;
        sum2 += c * c;
    }
    double mean = sum / samples;
    double sd = std::sqrt(std::max(0.0, sum2 / samples - mean * mean));
    return {mean, 4 * sd / std::sqrt(samples)};
}

// |<down...down| rho |up...up>| * 2 averaged over trajectories.
double ghz_coherence(const NoiseSpec &spec, double t, int n_ions, int samples, std::uint64_t seed) {
    const std::size_t top = (std::size_t{1} << n_ions) - 1;
    cplx acc = 0;
    GhzPreparation prep = prepare_ghz(QubitRegister(n_ions, false), 0.0);
    for (int k = 0; k < samples; ++k) {
        RngStream rng(seed, k, StreamPurpose::Noise);
        auto phases = sample_dephasing_phases(spec, t, n_ions, rng);
        QubitRegister noisy = apply_phase_noise(prep.state, phases);
        acc += noisy.amplitude(0) * std::conj(noisy.amplitude(top));
    }
    return 2 * std::abs(acc) / samples;
}

}  // namespace

TEST(noise, zero_rate_is_noiseless) {
    NoiseSpec spec{0.0, DephasingMode::Independent};
    RngStream rng(1, 0, StreamPurpose::Noise);
    for (double p : sample_dephasing_phases(spec, 5.0, 4, rng)) {
        EXPECT_EQ(p, 0.0);
    }
    EXPECT_EQ(coherence_factor(spec, 5.0, 4), 1.0);
    QubitRegister ghz = prepare_ghz(QubitRegister(3, false), 0.2).state;
    std::vector<double> zeros(3, 0.0);
    QubitRegister same = apply_phase_noise(ghz, zeros);
    for (std::size_t k = 0; k < ghz.dimension(); ++k) {
        EXPECT_EQ(same.amplitude(k), ghz.amplitude(k));
    }
}

TEST(noise, variance_grows_linearly) {
    NoiseSpec spec{0.3, DephasingMode::Independent};
    EXPECT_DOUBLE_EQ(dephasing_variance(spec, 2.0), 1.2);
    EXPECT_NEAR(coherence_factor(spec, 2.0, 1), std::exp(-0.6), 1e-15);
    EXPECT_NEAR(coherence_factor(spec, 2.0, 3), std::exp(-1.8), 1e-15);
    spec.mode = DephasingMode::Common;
    EXPECT_NEAR(coherence_factor(spec, 2.0, 3), std::exp(-5.4), 1e-15);
}

TEST(noise, single_ion_phase_average) {
    // gamma t = 0.5: variance 1, <e^{i phi}> = e^{-1/2}.
    NoiseSpec spec{0.5, DephasingMode::Independent};
    CosMean m = mean_cos_of_sum(spec, 1.0, 1, 100000, 7);
    EXPECT_NEAR(m.mean, std::exp(-0.5), m.tolerance);
}

TEST(noise, single_ion_coherence_decay) {
    // gamma t = 0.1: variance 0.2, coherence e^{-0.1}.
    NoiseSpec spec{0.1, DephasingMode::Independent};
    CosMean m = mean_cos_of_sum(spec, 1.0, 1, 100000, 8);
    EXPECT_NEAR(m.mean, std::exp(-0.1), m.tolerance);
}

TEST(noise, ghz_contrast_decays_l_times_faster) {
    // L = 4, gamma t = 0.1: each ion contributes variance 0.2, so e^{-0.4}.
    NoiseSpec spec{0.1, DephasingMode::Independent};
    CosMean m = mean_cos_of_sum(spec, 1.0, 4, 100000, 9);
    EXPECT_NEAR(m.mean, std::exp(-0.4), m.tolerance);
    EXPECT_NEAR(ghz_coherence(spec, 1.0, 4, 40000, 10), std::exp(-0.4), 0.02);
    EXPECT_DOUBLE_EQ(coherence_factor(spec, 1.0, 4), std::exp(-0.4));
}

TEST(noise, common_mode_shares_one_phase) {
    NoiseSpec spec{0.2, DephasingMode::Common};
    RngStream rng(3, 0, StreamPurpose::Noise);
    auto phases = sample_dephasing_phases(spec, 1.0, 5, rng);
    for (double p : phases) {
        EXPECT_EQ(p, phases[0]);
    }
    EXPECT_NE(phases[0], 0.0);
}

TEST(noise, common_mode_contrast_scales_with_l_squared) {
    // L = 3, sigma^2 = 2 * 0.05 = 0.1: e^{-9 * 0.1 / 2}.
    NoiseSpec spec{0.05, DephasingMode::Common};
    CosMean m = mean_cos_of_sum(spec, 1.0, 3, 100000, 11);
    EXPECT_NEAR(m.mean, std::exp(-0.45), m.tolerance);
}

TEST(noise, phase_noise_validation) {
    QubitRegister reg(3, false);
    std::vector<double> two(2, 0.1);
    EXPECT_THROW(apply_phase_noise(reg, two), Error);
    RngStream rng(1, 0);
    EXPECT_THROW(sample_dephasing_phases(NoiseSpec{-1.0}, 1.0, 2, rng), Error);
    EXPECT_THROW(sample_dephasing_phases(NoiseSpec{1.0}, -1.0, 2, rng), Error);
}

TEST(noise, dicke_states) {
    QubitRegister d = dicke_state(3, false, 1);
    const double a = 1 / std::sqrt(3.0);
    for (std::size_t k = 0; k < 8; ++k) {
        double expected = (k == 1 || k == 2 || k == 4) ? a : 0.0;
        EXPECT_NEAR(d.amplitude(k).real(), expected, 1e-15);
    }
    QubitRegister with_bus = dicke_state(2, true, 1);
    EXPECT_NEAR(with_bus.amplitude(0b010).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(with_bus.amplitude(0b100).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(with_bus.amplitude(0b011), cplx(0));
    EXPECT_THROW(dicke_state(3, false, 4), Error);
}

TEST(noise, zero_admixture_is_identity) {
    QubitRegister ghz = prepare_ghz(QubitRegister(4, false), 0.3).state;
    ImperfectionSpec spec;
    spec.admixture[2] = 0;
    RngStream rng(1, 0, StreamPurpose::Imperfection);
    QubitRegister out = perturb_ghz(ghz, spec, rng);
    for (std::size_t k = 0; k < ghz.dimension(); ++k) {
        EXPECT_EQ(out.amplitude(k), ghz.amplitude(k));
    }
}

TEST(noise, fidelity_fixture) {
    // Dicke components are orthogonal to the GHZ state, so the fidelity after
    // renormalisation is 1 / (1 + |eps|^2). |eps|^2 = 3/7 gives 0.7.
    QubitRegister ghz = prepare_ghz(QubitRegister(2, false), 0.0).state;
    ImperfectionSpec spec;
    spec.admixture[1] = std::sqrt(3.0 / 7.0);
    RngStream rng(1, 0, StreamPurpose::Imperfection);
    QubitRegister out = perturb_ghz(ghz, spec, rng);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-14);
    EXPECT_NEAR(fidelity(ghz, out), 0.7, 1e-14);
}

TEST(noise, random_phases_keep_magnitude) {
    QubitRegister ghz = prepare_ghz(QubitRegister(3, false), 0.0).state;
    ImperfectionSpec spec;
    spec.admixture[1] = 0.2;
    spec.admixture[2] = cplx(0, 0.1);
    spec.random_phases = true;
    RngStream a(5, 0, StreamPurpose::Imperfection);
    RngStream b(5, 0, StreamPurpose::Imperfection);
    QubitRegister x = perturb_ghz(ghz, spec, a);
    QubitRegister y = perturb_ghz(ghz, spec, b);
    for (std::size_t k = 0; k < x.dimension(); ++k) {
        EXPECT_EQ(x.amplitude(k), y.amplitude(k));
    }
    EXPECT_NEAR(fidelity(ghz, x), 1 / (1 + 0.04 + 0.01), 1e-14);
    // Amplitude on |up, down, down> carries eps_1 / sqrt(3) after renormalisation.
    double scale = 1 / std::sqrt(1.05);
    EXPECT_NEAR(std::abs(x.amplitude(0b100)), 0.2 / std::sqrt(3.0) * scale, 1e-14);
}

TEST(noise, admixture_validation) {
    QubitRegister ghz = prepare_ghz(QubitRegister(3, false), 0.0).state;
    RngStream rng(1, 0);
    for (int p : {0, 3, -1}) {
        ImperfectionSpec spec;
        spec.admixture[p] = 0.1;
        EXPECT_THROW(perturb_ghz(ghz, spec, rng), Error) << p;
    }
    EXPECT_THROW(fidelity(QubitRegister(2, false), QubitRegister(3, false)), Error);
}
