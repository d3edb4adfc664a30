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

#include <json.hpp>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ramsey/bench.h"
#include "ramsey/calibration.h"
#include "ramsey/fourier.h"
#include "ramsey/protocols.h"

namespace ramsey {

/// Column order shared by trial and estimate rows. Trial rows leave
/// `estimate` and `sigma` empty; estimate rows leave `outcome` empty.
inline constexpr const char *kRecordColumns = "protocol,L,T_R,omega_R,seed,outcome,estimate,sigma";
inline constexpr const char *kScalingColumns = "protocol,L,T_R,tau,trials,sigma,limit,ratio";
inline constexpr const char *kDephasingColumns = "protocol,T_R,sigma_sqrt_tau,contrast,stage";
inline constexpr const char *kFourierColumns = "p,C_p,xi_p";
inline constexpr const char *kCalibrationColumns =
    "omega_R1,omega_R2,T_R1,T_R2,phi_f,iterations,omega_0_estimate,naive_estimate";
inline constexpr const char *kSummarySchema = "ionramsey.summary/1";

/// Shortest round-trip decimal form (%.17g).
std::string format_number(double x);

/// `# key value` lines understood by gnuplot as comments.
void write_comment_header(std::ostream &out, std::span<const std::pair<std::string, std::string>> fields);

void write_record_header(std::ostream &out);
void write_trial_row(std::ostream &out, const TrialRecord &r);
void write_estimate_row(std::ostream &out, const EstimateRecord &e);

struct CsvRow {
    std::string protocol;
    int n_ions = 0;
    double t_ramsey = 0;
    double omega_r = 0;
    std::uint64_t seed = 0;
    std::string outcome;
    std::string estimate;
    std::string sigma;
};
/// Parses rows written by write_trial_row / write_estimate_row; comment and
/// header lines are skipped.
std::vector<CsvRow> read_record_rows(std::istream &in);

void write_scaling_csv(std::ostream &out, const ScalingReport &report);
void write_dephasing_csv(std::ostream &out, const DephasingReport &report);
void write_fourier_csv(std::ostream &out, const FourierFit &fit);
void write_calibration_csv(std::ostream &out, const CalibrationState &state, double naive_estimate);

nlohmann::ordered_json to_json(const EstimateRecord &e);
nlohmann::ordered_json to_json(const ScalingReport &report);
nlohmann::ordered_json to_json(const DephasingReport &report);
nlohmann::ordered_json to_json(const FourierFit &fit);
nlohmann::ordered_json to_json(const CalibrationState &state);

}  // namespace ramsey
