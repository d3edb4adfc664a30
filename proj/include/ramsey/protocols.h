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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/gates.h"
#include "ramsey/noise.h"
#include "ramsey/register.h"

namespace ramsey {

/// Which Ramsey experiment a record belongs to.
///  - Standard: pi/2 on every ion, free evolution, pi/2 readout pulse; signal
///    (L_down - L_up)/L.
///  - GhzFinalPulse: GHZ preparation as the first pulse, pi/2 on every ion as
///    the second; signal = product of per-ion signs (+1 for up).
///  - GhzTimeReversed: GHZ preparation, then the inverse of the preparation;
///    signal = +1 if ion 1 reads down, -1 if up.
/// Every signal has mean C cos(k dw T_R + final_phase), k = 1 for Standard and
/// L for the GHZ variants, C the coherence left after dephasing.
enum class Protocol { Standard, GhzFinalPulse, GhzTimeReversed };

std::string_view protocol_name(Protocol p);
Protocol parse_protocol(std::string_view name);

/// Fringe multiplier k for a protocol.
int fringe_multiplier(Protocol p, int n_ions);

struct RamseyConfig {
    int n_ions = 1;
    /// Free-evolution time T_R (s).
    double t_ramsey = 1;
    /// Reference and transition frequencies (rad/s); only their difference matters.
    double omega_r = 0;
    double omega_0 = 0;
    /// Controllable phase of the readout step.
    double final_phase = 0;
    /// Relative phase of the prepared GHZ state.
    double ghz_phase = 0;
    NoiseSpec noise;
    ImperfectionSpec imperfection;
    /// Route every CN through the motional bus.
    bool use_bus = false;
    /// Trials per operating point.
    std::int64_t shots = 1;
    /// Accept configurations whose accumulated phase can wrap.
    bool unwrap_hint = false;

    double detuning() const {
        return omega_r - omega_0;
    }
    void validate() const;
};

/// Throws ErrorKind::AmbiguousFringe when |dw| T_R k >= pi and no unwrap hint is set.
void check_fringe_unambiguous(const RamseyConfig &cfg, Protocol protocol);

struct TrialRecord {
    Protocol protocol = Protocol::Standard;
    int n_ions = 1;
    double t_ramsey = 0;
    double omega_r = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    Outcome outcome;
    /// Per-trial signal in [-1, 1] as documented on Protocol.
    double signal = 0;
    /// Raw integer outcome: L_down for Standard, the +-1 signal otherwise.
    int raw_outcome() const;
};

/// Register just before readout for one noise trajectory (`phases` empty or
/// all zero for the ideal experiment).
QubitRegister final_state(const RamseyConfig &cfg, Protocol protocol, std::span<const double> phases = {});

/// Exact expectation of the per-trial signal for a given register at readout.
double signal_expectation(const QubitRegister &reg, Protocol protocol);

/// Per-trial signal of a sampled outcome.
double trial_signal(const Outcome &outcome, Protocol protocol, int n_ions);

/// One trial: trajectory phases from stream (seed, trial, Noise), readout from
/// (seed, trial, Measurement).
TrialRecord run_trial(const RamseyConfig &cfg, Protocol protocol, std::uint64_t seed, std::uint64_t trial);
TrialRecord run_standard_ramsey(const RamseyConfig &cfg, std::uint64_t seed, std::uint64_t trial);
/// `readout` selects final-pulse or time-reversed readout.
TrialRecord run_ghz_ramsey(const RamseyConfig &cfg, Protocol readout, std::uint64_t seed, std::uint64_t trial);

/// Trials 0..n-1; identical to calling run_trial for each index.
std::vector<TrialRecord> run_trials(const RamseyConfig &cfg, Protocol protocol, std::uint64_t seed, std::int64_t n,
                                    int threads = 1);

/// Ensemble-mean signal with infinitely many shots. Dephasing enters through
/// its exact characteristic function; combining dephasing with an imperfect
/// state is rejected because the signal is then no longer a pure phase shift.
double expected_signal(const RamseyConfig &cfg, Protocol protocol);

/// Monte Carlo fringe slope dS/d(dw) at the configured detuning: central
/// difference of exact per-trajectory expectations over the same noise
/// trajectories run_trials uses.
struct SlopeMeasurement {
    double slope = 0;
    double standard_error = 0;
    std::int64_t trajectories = 0;
};
SlopeMeasurement measure_fringe_slope(const RamseyConfig &cfg, Protocol protocol, std::uint64_t seed, std::int64_t n,
                                      int threads = 1);

/// Signal model used to invert sampled fringes: S = contrast(T) cos(k dw T + final_phase).
/// `prior_detuning` is the experimenter's guess of dw, which fixes the fringe branch.
struct FringeModel {
    int multiplier = 1;
    double final_phase = 0;
    double prior_detuning = 0;
    std::function<double(double)> contrast = [](double) { return 1.0; };

    double operating_phase(double t_ramsey) const;
    double signal(double delta_omega, double t_ramsey) const;
    double slope(double delta_omega, double t_ramsey) const;
};

FringeModel fringe_model(const RamseyConfig &cfg, Protocol protocol);

enum class EstimationMethod { SingleFringe, TwoPoint };

std::string_view method_name(EstimationMethod m);

struct EstimateRecord {
    Protocol protocol = Protocol::Standard;
    EstimationMethod method = EstimationMethod::SingleFringe;
    int n_ions = 1;
    double t_ramsey = 0;
    double omega_r = 0;
    std::uint64_t seed = 0;
    double delta_omega = 0;
    /// 1-sigma statistical uncertainty: sigma_S / |dS/d(dw)|.
    double sigma = 0;
    std::int64_t trials = 0;
    /// Total interrogation time: sum of T_R over trials.
    double tau = 0;
    double signal_mean = 0;
    double signal_sd = 0;
};

/// Detuning reproducing `mean_signal` on the fringe branch through the
/// operating point. Throws DegeneratePoint where the fringe is flat.
double invert_signal(double mean_signal, double t_ramsey, const FringeModel &model);

/// Inverts the mean signal on the branch through the operating point.
/// SingleFringe needs one T_R; TwoPoint needs exactly two and differences the
/// fringe phases so the final phase cancels. Throws DegeneratePoint where the
/// fringe slope vanishes.
EstimateRecord estimate_frequency(std::span<const TrialRecord> records, EstimationMethod method,
                                  const FringeModel &model);

}  // namespace ramsey
