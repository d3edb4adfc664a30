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

#include "ramsey/protocols.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "ramsey/error.h"
#include "ramsey/parallel.h"

namespace ramsey {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this |sin| the fringe is treated as flat at the operating point.
constexpr double kMinSlopeFactor = 1e-3;

RngStream imperfection_stream(std::uint64_t seed) {
    // One draw per run: the admixture phases are a fixed property of the
    // preparation, shared by every trial.
    return RngStream(seed, 0, StreamPurpose::Imperfection);
}

QubitRegister prepared_state(const RamseyConfig &cfg, Protocol protocol, std::uint64_t seed, GateSequence *seq_out) {
    if (protocol == Protocol::Standard) {
        return apply_rotation(QubitRegister(cfg.n_ions, cfg.use_bus), PulseSpec::all(cfg.n_ions, kPi / 2, 0));
    }
    GhzPreparation prep = prepare_ghz(QubitRegister(cfg.n_ions, cfg.use_bus), cfg.ghz_phase);
    if (seq_out != nullptr) {
        *seq_out = prep.sequence;
    }
    if (cfg.imperfection.active()) {
        RngStream rng = imperfection_stream(seed);
        return perturb_ghz(std::move(prep.state), cfg.imperfection, rng);
    }
    return std::move(prep.state);
}

QubitRegister readout(QubitRegister reg, const RamseyConfig &cfg, Protocol protocol, const GateSequence &seq) {
    const int n = cfg.n_ions;
    switch (protocol) {
        case Protocol::Standard:
            // Phase pi undoes the first pulse; subtracting final_phase gives
            // p_up = (1 - cos(dw T + final_phase))/2.
            return apply_rotation(std::move(reg), PulseSpec::all(n, kPi / 2, kPi - cfg.final_phase));
        case Protocol::GhzFinalPulse: {
            // Equal per-ion phases whose sum is ghz_phase + L pi/2 - final_phase,
            // giving <prod sigma_z> = cos(L dw T + final_phase).
            double per_ion = (cfg.ghz_phase + n * kPi / 2 - cfg.final_phase) / n;
            return apply_rotation(std::move(reg), PulseSpec::all(n, kPi / 2, per_ion));
        }
        case Protocol::GhzTimeReversed:
            return reverse_prep(std::move(reg), seq, cfg.final_phase);
    }
    return reg;
}

QubitRegister final_state_seeded(const RamseyConfig &cfg, Protocol protocol, std::span<const double> phases,
                                 std::uint64_t seed) {
    GateSequence seq;
    QubitRegister reg = prepared_state(cfg, protocol, seed, &seq);
    reg = free_evolve(std::move(reg), cfg.detuning(), cfg.t_ramsey);
    if (!phases.empty()) {
        reg = apply_phase_noise(std::move(reg), phases);
    }
    return readout(std::move(reg), cfg, protocol, seq);
}

double mean_of(std::span<const double> xs) {
    double total = 0;
    for (double x : xs) {
        total += x;
    }
    return total / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs, double mean) {
    double ss = 0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string_view protocol_name(Protocol p) {
    switch (p) {
        case Protocol::Standard:
            return "standard";
        case Protocol::GhzFinalPulse:
            return "ghz_final_pulse";
        case Protocol::GhzTimeReversed:
            return "ghz_time_reversed";
    }
    return "unknown";
}

Protocol parse_protocol(std::string_view name) {
    for (Protocol p : {Protocol::Standard, Protocol::GhzFinalPulse, Protocol::GhzTimeReversed}) {
        if (protocol_name(p) == name) {
            return p;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown protocol '" + std::string(name) + "'");
}

int fringe_multiplier(Protocol p, int n_ions) {
    return p == Protocol::Standard ? 1 : n_ions;
}

void RamseyConfig::validate() const {
    if (n_ions < 1 || n_ions > kMaxIons) {
        throw Error(ErrorKind::Capacity, "ion count " + std::to_string(n_ions) + " outside [1, " +
                                             std::to_string(kMaxIons) + "]");
    }
    if (!(t_ramsey > 0)) {
        throw Error(ErrorKind::InvalidArgument, "T_R must be > 0");
    }
    if (shots < 1) {
        throw Error(ErrorKind::InvalidArgument, "shots must be >= 1");
    }
    noise.validate();
    imperfection.validate(n_ions);
}

void check_fringe_unambiguous(const RamseyConfig &cfg, Protocol protocol) {
    const double phase = std::abs(cfg.detuning()) * cfg.t_ramsey * fringe_multiplier(protocol, cfg.n_ions);
    if (phase >= kPi && !cfg.unwrap_hint) {
        throw Error(ErrorKind::AmbiguousFringe, "accumulated fringe phase " + std::to_string(phase) +
                                                    " rad >= pi; supply an unwrap hint to accept it");
    }
}

int TrialRecord::raw_outcome() const {
    if (protocol == Protocol::Standard) {
        return outcome.n_down;
    }
    return signal > 0 ? 1 : -1;
}

QubitRegister final_state(const RamseyConfig &cfg, Protocol protocol, std::span<const double> phases) {
    cfg.validate();
    return final_state_seeded(cfg, protocol, phases, 0);
}

double signal_expectation(const QubitRegister &reg, Protocol protocol) {
    switch (protocol) {
        case Protocol::Standard:
            return -expect_jz(reg).normalized();
        case Protocol::GhzFinalPulse:
            return expect_parity(reg).normalized();
        case Protocol::GhzTimeReversed:
            return -2.0 * expect_ion_sz(reg, 1);
    }
    return 0;
}

double trial_signal(const Outcome &outcome, Protocol protocol, int n_ions) {
    switch (protocol) {
        case Protocol::Standard:
            return static_cast<double>(2 * outcome.n_down - n_ions) / n_ions;
        case Protocol::GhzFinalPulse:
            return outcome.parity;
        case Protocol::GhzTimeReversed:
            return ((outcome.ion_bits >> (n_ions - 1)) & 1U) ? -1.0 : 1.0;
    }
    return 0;
}

TrialRecord run_trial(const RamseyConfig &cfg, Protocol protocol, std::uint64_t seed, std::uint64_t trial) {
    cfg.validate();
    std::vector<double> phases;
    if (cfg.noise.active()) {
        RngStream noise_rng(seed, trial, StreamPurpose::Noise);
        phases = sample_dephasing_phases(cfg.noise, cfg.t_ramsey, cfg.n_ions, noise_rng);
    }
    QubitRegister reg = final_state_seeded(cfg, protocol, phases, seed);
    RngStream rng(seed, trial, StreamPurpose::Measurement);
    Outcome outcome = BornSampler(reg).draw(rng);
    return TrialRecord{protocol, cfg.n_ions, cfg.t_ramsey, cfg.omega_r, seed, trial, outcome,
                       trial_signal(outcome, protocol, cfg.n_ions)};
}

TrialRecord run_standard_ramsey(const RamseyConfig &cfg, std::uint64_t seed, std::uint64_t trial) {
    return run_trial(cfg, Protocol::Standard, seed, trial);
}

TrialRecord run_ghz_ramsey(const RamseyConfig &cfg, Protocol readout_kind, std::uint64_t seed, std::uint64_t trial) {
    if (readout_kind == Protocol::Standard) {
        throw Error(ErrorKind::InvalidArgument, "GHZ Ramsey needs a GHZ readout protocol");
    }
    return run_trial(cfg, readout_kind, seed, trial);
}

std::vector<TrialRecord> run_trials(const RamseyConfig &cfg, Protocol protocol, std::uint64_t seed, std::int64_t n,
                                    int threads) {
    cfg.validate();
    std::vector<TrialRecord> out(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    if (cfg.noise.active()) {
        parallel_for(n, threads, [&](std::int64_t i) {
            out[static_cast<std::size_t>(i)] = run_trial(cfg, protocol, seed, static_cast<std::uint64_t>(i));
        });
        return out;
    }
    // Without dephasing every trial reads out the same state.
    const QubitRegister reg = final_state_seeded(cfg, protocol, {}, seed);
    const BornSampler sampler(reg);
    parallel_for(n, threads, [&](std::int64_t i) {
        const auto trial = static_cast<std::uint64_t>(i);
        RngStream rng(seed, trial, StreamPurpose::Measurement);
        Outcome outcome = sampler.draw(rng);
        out[static_cast<std::size_t>(i)] = TrialRecord{protocol, cfg.n_ions, cfg.t_ramsey, cfg.omega_r, seed, trial,
                                                       outcome, trial_signal(outcome, protocol, cfg.n_ions)};
    });
    return out;
}

double expected_signal(const RamseyConfig &cfg, Protocol protocol) {
    cfg.validate();
    if (cfg.noise.active() && cfg.imperfection.active()) {
        throw Error(ErrorKind::InvalidArgument,
                    "expectation mode cannot combine dephasing with an imperfect GHZ state");
    }
    const double ideal = signal_expectation(final_state_seeded(cfg, protocol, {}, 0), protocol);
    if (!cfg.noise.active()) {
        return ideal;
    }
    const int summed = protocol == Protocol::Standard ? 1 : cfg.n_ions;
    return ideal * coherence_factor(cfg.noise, cfg.t_ramsey, summed);
}

SlopeMeasurement measure_fringe_slope(const RamseyConfig &cfg, Protocol protocol, std::uint64_t seed, std::int64_t n,
                                      int threads) {
    cfg.validate();
    const int k = fringe_multiplier(protocol, cfg.n_ions);
    const double h = 1e-4 / (k * cfg.t_ramsey);
    RamseyConfig plus = cfg;
    RamseyConfig minus = cfg;
    plus.omega_r += h;
    minus.omega_r -= h;
    const std::int64_t count = cfg.noise.active() ? n : 1;
    std::vector<double> slopes(static_cast<std::size_t>(count));
    parallel_for(count, threads, [&](std::int64_t i) {
        std::vector<double> phases;
        if (cfg.noise.active()) {
            RngStream noise_rng(seed, static_cast<std::uint64_t>(i), StreamPurpose::Noise);
            phases = sample_dephasing_phases(cfg.noise, cfg.t_ramsey, cfg.n_ions, noise_rng);
        }
        double up = signal_expectation(final_state_seeded(plus, protocol, phases, seed), protocol);
        double down = signal_expectation(final_state_seeded(minus, protocol, phases, seed), protocol);
        slopes[static_cast<std::size_t>(i)] = (up - down) / (2 * h);
    });
    SlopeMeasurement m;
    m.trajectories = count;
    m.slope = mean_of(slopes);
    m.standard_error = count > 1 ? sample_sd(slopes, m.slope) / std::sqrt(static_cast<double>(count)) : 0.0;
    return m;
}

double FringeModel::operating_phase(double t_ramsey) const {
    return multiplier * prior_detuning * t_ramsey + final_phase;
}

double FringeModel::signal(double delta_omega, double t_ramsey) const {
    return contrast(t_ramsey) * std::cos(multiplier * delta_omega * t_ramsey + final_phase);
}

double FringeModel::slope(double delta_omega, double t_ramsey) const {
    return -contrast(t_ramsey) * multiplier * t_ramsey * std::sin(multiplier * delta_omega * t_ramsey + final_phase);
}

FringeModel fringe_model(const RamseyConfig &cfg, Protocol protocol) {
    FringeModel m;
    m.multiplier = fringe_multiplier(protocol, cfg.n_ions);
    m.final_phase = cfg.final_phase;
    m.prior_detuning = 0;
    const NoiseSpec noise = cfg.noise;
    const int summed = protocol == Protocol::Standard ? 1 : cfg.n_ions;
    m.contrast = [noise, summed](double t) { return coherence_factor(noise, t, summed); };
    return m;
}

std::string_view method_name(EstimationMethod m) {
    return m == EstimationMethod::SingleFringe ? "single_fringe" : "two_point";
}

namespace {

struct PhaseEstimate {
    double phase;
    double sigma;
    double mean;
    double sd;
};

// Accumulated phase reproducing `mean` on the fringe branch through the operating point.
double branch_phase(double mean, double t_ramsey, const FringeModel &model) {
    const double x_op = model.operating_phase(t_ramsey);
    const double s = std::sin(x_op);
    const double contrast = model.contrast(t_ramsey);
    if (std::abs(s) < kMinSlopeFactor || !(contrast > 0)) {
        throw Error(ErrorKind::DegeneratePoint, "fringe slope vanishes at the operating point");
    }
    const double ratio = std::clamp(mean / contrast, -1.0, 1.0);
    double x = std::acos(ratio);
    if (s < 0) {
        x = -x;
    }
    return x + 2 * kPi * std::round((x_op - x) / (2 * kPi));
}

PhaseEstimate invert_fringe(std::span<const double> signals, double t_ramsey, const FringeModel &model) {
    if (signals.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "need at least two trials per operating point");
    }
    const double mean = mean_of(signals);
    const double sd = sample_sd(signals, mean);
    const double x = branch_phase(mean, t_ramsey, model);
    const double contrast = model.contrast(t_ramsey);
    const double s = std::sin(model.operating_phase(t_ramsey));
    const double sigma = sd / std::sqrt(static_cast<double>(signals.size())) / (contrast * std::abs(s));
    return PhaseEstimate{x, sigma, mean, sd};
}

}  // namespace

double invert_signal(double mean_signal, double t_ramsey, const FringeModel &model) {
    return (branch_phase(mean_signal, t_ramsey, model) - model.final_phase) / (model.multiplier * t_ramsey);
}

EstimateRecord estimate_frequency(std::span<const TrialRecord> records, EstimationMethod method,
                                  const FringeModel &model) {
    if (records.empty()) {
        throw Error(ErrorKind::InvalidArgument, "no trial records");
    }
    std::map<double, std::vector<double>> by_time;
    double tau = 0;
    for (const TrialRecord &r : records) {
        if (r.protocol != records.front().protocol || r.n_ions != records.front().n_ions) {
            throw Error(ErrorKind::InvalidArgument, "records mix protocols or ion counts");
        }
        by_time[r.t_ramsey].push_back(r.signal);
        tau += r.t_ramsey;
    }
    EstimateRecord est;
    est.protocol = records.front().protocol;
    est.method = method;
    est.n_ions = records.front().n_ions;
    est.omega_r = records.front().omega_r;
    est.seed = records.front().seed;
    est.trials = static_cast<std::int64_t>(records.size());
    est.tau = tau;
    const double k = model.multiplier;
    if (method == EstimationMethod::SingleFringe) {
        if (by_time.size() != 1) {
            throw Error(ErrorKind::InvalidArgument, "single-fringe estimation needs one T_R");
        }
        const auto &[t, signals] = *by_time.begin();
        PhaseEstimate p = invert_fringe(signals, t, model);
        est.t_ramsey = t;
        est.delta_omega = (p.phase - model.final_phase) / (k * t);
        est.sigma = p.sigma / (k * t);
        est.signal_mean = p.mean;
        est.signal_sd = p.sd;
        return est;
    }
    if (by_time.size() != 2) {
        throw Error(ErrorKind::InvalidArgument, "two-point estimation needs exactly two T_R values");
    }
    auto first = by_time.begin();
    auto second = std::next(first);
    PhaseEstimate p1 = invert_fringe(first->second, first->first, model);
    PhaseEstimate p2 = invert_fringe(second->second, second->first, model);
    const double dt = second->first - first->first;
    est.t_ramsey = second->first;
    est.delta_omega = (p2.phase - p1.phase) / (k * dt);
    est.sigma = std::hypot(p1.sigma, p2.sigma) / (k * dt);
    est.signal_mean = p2.mean;
    est.signal_sd = p2.sd;
    return est;
}

}  // namespace ramsey
