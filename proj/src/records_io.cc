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

#include "ramsey/records_io.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ramsey/error.h"

namespace ramsey {

namespace {

std::string_view mode_name(DephasingMode m) {
    return m == DephasingMode::Independent ? "independent" : "common";
}

nlohmann::ordered_json optimum_json(const DephasingOptimum &o) {
    nlohmann::ordered_json j;
    j["protocol"] = protocol_name(o.protocol);
    j["t_opt"] = o.t_opt;
    j["min_sigma_sqrt_tau"] = o.min_value;
    j["at_boundary"] = o.at_boundary;
    return j;
}

}  // namespace

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_comment_header(std::ostream &out, std::span<const std::pair<std::string, std::string>> fields) {
    for (const auto &[key, value] : fields) {
        out << "# " << key << ' ' << value << '\n';
    }
}

void write_record_header(std::ostream &out) {
    out << kRecordColumns << '\n';
}

void write_trial_row(std::ostream &out, const TrialRecord &r) {
    out << protocol_name(r.protocol) << ',' << r.n_ions << ',' << format_number(r.t_ramsey) << ','
        << format_number(r.omega_r) << ',' << r.seed << ',' << r.raw_outcome() << ",,\n";
}

void write_estimate_row(std::ostream &out, const EstimateRecord &e) {
    out << protocol_name(e.protocol) << ',' << e.n_ions << ',' << format_number(e.t_ramsey) << ','
        << format_number(e.omega_r) << ',' << e.seed << ",," << format_number(e.delta_omega) << ','
        << format_number(e.sigma) << '\n';
}

std::vector<CsvRow> read_record_rows(std::istream &in) {
    std::vector<CsvRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == kRecordColumns) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (!line.empty() && line.back() == ',') {
            fields.emplace_back();
        }
        if (fields.size() != 8) {
            throw Error(ErrorKind::InvalidArgument, "record row has " + std::to_string(fields.size()) +
                                                        " fields, expected 8: " + line);
        }
        CsvRow row;
        row.protocol = fields[0];
        row.n_ions = std::stoi(fields[1]);
        row.t_ramsey = std::stod(fields[2]);
        row.omega_r = std::stod(fields[3]);
        row.seed = std::stoull(fields[4]);
        row.outcome = fields[5];
        row.estimate = fields[6];
        row.sigma = fields[7];
        rows.push_back(row);
    }
    return rows;
}

void write_scaling_csv(std::ostream &out, const ScalingReport &report) {
    out << kScalingColumns << '\n';
    for (const ScalingRow &r : report.rows) {
        out << protocol_name(r.protocol) << ',' << r.n_ions << ',' << format_number(r.t_ramsey) << ','
            << format_number(r.tau) << ',' << r.trials << ',' << format_number(r.sigma) << ','
            << format_number(r.limit) << ',' << format_number(r.ratio) << '\n';
    }
}

void write_dephasing_csv(std::ostream &out, const DephasingReport &report) {
    out << kDephasingColumns << '\n';
    for (const DephasingPoint &p : report.points) {
        out << protocol_name(p.protocol) << ',' << format_number(p.t_ramsey) << ','
            << format_number(p.sigma_sqrt_tau) << ',' << format_number(p.contrast) << ','
            << (p.refinement ? "refine" : "grid") << '\n';
    }
}

void write_fourier_csv(std::ostream &out, const FourierFit &fit) {
    out << kFourierColumns << '\n';
    out << "0," << format_number(fit.offset) << ",0\n";
    for (int p = 1; p <= fit.n_harmonics; ++p) {
        out << p << ',' << format_number(fit.amplitude_of(p)) << ',' << format_number(fit.phase_of(p)) << '\n';
    }
}

void write_calibration_csv(std::ostream &out, const CalibrationState &state, double naive_estimate) {
    out << kCalibrationColumns << '\n';
    out << format_number(state.omega_r1) << ',' << format_number(state.omega_r2) << ',' << format_number(state.t_r1)
        << ',' << format_number(state.t_r2) << ',' << format_number(state.final_phase) << ',' << state.iterations
        << ',' << format_number(state.omega_0_estimate()) << ',' << format_number(naive_estimate) << '\n';
}

nlohmann::ordered_json to_json(const EstimateRecord &e) {
    nlohmann::ordered_json j;
    j["protocol"] = protocol_name(e.protocol);
    j["method"] = method_name(e.method);
    j["L"] = e.n_ions;
    j["T_R"] = e.t_ramsey;
    j["omega_R"] = e.omega_r;
    j["delta_omega"] = e.delta_omega;
    j["sigma"] = e.sigma;
    j["trials"] = e.trials;
    j["tau"] = e.tau;
    j["signal_mean"] = e.signal_mean;
    j["signal_sd"] = e.signal_sd;
    return j;
}

nlohmann::ordered_json to_json(const ScalingReport &report) {
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (const ScalingRow &r : report.rows) {
        nlohmann::ordered_json row;
        row["protocol"] = protocol_name(r.protocol);
        row["L"] = r.n_ions;
        row["T_R"] = r.t_ramsey;
        row["tau"] = r.tau;
        row["trials"] = r.trials;
        row["sigma"] = r.sigma;
        row["limit"] = r.limit;
        row["ratio"] = r.ratio;
        j["rows"].push_back(row);
    }
    j["fits"] = nlohmann::ordered_json::array();
    for (const ScalingFit &f : report.fits) {
        nlohmann::ordered_json fit;
        fit["protocol"] = protocol_name(f.protocol);
        fit["slope"] = f.slope;
        // JSON has no infinity; an undefined interval is written as null.
        fit["slope_stderr"] = std::isfinite(f.slope_stderr) ? nlohmann::ordered_json(f.slope_stderr) : nullptr;
        fit["slope_ci95"] = std::isfinite(f.slope_ci95) ? nlohmann::ordered_json(f.slope_ci95) : nullptr;
        j["fits"].push_back(fit);
    }
    return j;
}

nlohmann::ordered_json to_json(const DephasingReport &report) {
    nlohmann::ordered_json j;
    j["gamma"] = report.gamma;
    j["L"] = report.n_ions;
    j["mode"] = mode_name(report.mode);
    j["trials"] = report.trials;
    j["standard"] = optimum_json(report.standard);
    j["ghz"] = optimum_json(report.ghz);
    j["argmin_ratio"] = report.argmin_ratio;
    j["min_ratio"] = report.min_ratio;
    j["points"] = report.points.size();
    return j;
}

nlohmann::ordered_json to_json(const FourierFit &fit) {
    nlohmann::ordered_json j;
    j["L"] = fit.n_harmonics;
    j["delta_omega"] = fit.delta_omega;
    j["offset"] = fit.offset;
    j["C"] = fit.amplitude;
    j["xi"] = fit.phase;
    j["residual_norm"] = fit.residual_norm;
    j["samples"] = fit.n_samples;
    return j;
}

nlohmann::ordered_json to_json(const CalibrationState &state) {
    nlohmann::ordered_json j;
    j["omega_R1"] = state.omega_r1;
    j["omega_R2"] = state.omega_r2;
    j["T_R1"] = state.t_r1;
    j["T_R2"] = state.t_r2;
    j["phi_f"] = state.final_phase;
    j["iterations"] = state.iterations;
    j["omega_0_estimate"] = state.omega_0_estimate();
    return j;
}

}  // namespace ramsey
