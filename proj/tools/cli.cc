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

#include "cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "config.h"
#include "ramsey/bench.h"
#include "ramsey/calibration.h"
#include "ramsey/error.h"
#include "ramsey/fourier.h"
#include "ramsey/protocols.h"
#include "ramsey/records_io.h"

namespace ramsey::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

using HeaderFields = std::vector<std::pair<std::string, std::string>>;

// What a command produces; the writer adds the manifest and picks the format.
struct CommandOutput {
    HeaderFields summary;
    std::string csv_body;
    json result;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config:
            return kExitConfig;
        case ErrorKind::Capacity:
            return kExitCapacity;
        case ErrorKind::NonConvergence:
            return kExitNonConvergence;
        default:
            return kExitFailure;
    }
}

void report_error(std::ostream &err, const std::string &kind, const std::string &message, int code) {
    json j;
    j["error"] = kind;
    j["message"] = message;
    j["exit_code"] = code;
    err << j.dump() << '\n';
}

[[noreturn]] void config_error(const std::string &message) {
    throw Error(ErrorKind::Config, message);
}

Protocol protocol_of(const Config &c, const std::string &section, const std::string &key, Protocol fallback) {
    if (!c.has(section, key)) {
        return fallback;
    }
    std::string name = c.get_string(section, key, "");
    try {
        return parse_protocol(name);
    } catch (const Error &) {
        config_error(section + "." + key + ": unknown protocol '" + name + "'");
    }
}

Protocol ghz_readout_of(const Config &c, const std::string &section) {
    Protocol p = protocol_of(c, section, "ghz_readout", Protocol::GhzFinalPulse);
    if (p == Protocol::Standard) {
        config_error(section + ".ghz_readout must be a GHZ readout");
    }
    return p;
}

DephasingMode mode_of(const Config &c, const std::string &section) {
    std::string name = c.get_string(section, "mode", "independent");
    if (name == "independent") {
        return DephasingMode::Independent;
    }
    if (name == "common") {
        return DephasingMode::Common;
    }
    config_error(section + ".mode: expected independent or common, got '" + name + "'");
}

ImperfectionSpec imperfection_of(const Config &c) {
    ImperfectionSpec spec;
    for (const std::string &key : c.keys("imperfection")) {
        if (key.rfind("eps_", 0) != 0) {
            continue;
        }
        std::vector<double> v = c.get_doubles("imperfection", key);
        if (v.empty() || v.size() > 2) {
            config_error("imperfection." + key + ": expected 're' or 're, im'");
        }
        spec.admixture[std::stoi(key.substr(4))] = cplx(v[0], v.size() == 2 ? v[1] : 0.0);
    }
    spec.random_phases = c.get_bool("imperfection", "random_phases", false);
    return spec;
}

RamseyConfig experiment_of(const Config &c) {
    RamseyConfig cfg;
    cfg.n_ions = static_cast<int>(c.get_int("experiment", "ions", 1));
    cfg.t_ramsey = c.get_double("experiment", "t_ramsey", 1.0);
    cfg.omega_r = c.get_double("experiment", "omega_r", 0.0);
    cfg.omega_0 = c.get_double("experiment", "omega_0", 0.0);
    cfg.final_phase = c.get_double("experiment", "final_phase", 0.0);
    cfg.ghz_phase = c.get_double("experiment", "ghz_phase", 0.0);
    cfg.use_bus = c.get_bool("experiment", "use_bus", false);
    cfg.unwrap_hint = c.get_bool("experiment", "unwrap_hint", false);
    cfg.shots = c.get_int("experiment", "trials", 1000);
    cfg.noise.gamma = c.get_double("noise", "gamma", 0.0);
    cfg.noise.mode = mode_of(c, "noise");
    cfg.imperfection = imperfection_of(c);
    return cfg;
}

std::string fit_summary(const ScalingFit &f) {
    return "slope " + format_number(f.slope) + " stderr " + format_number(f.slope_stderr) + " ci95 " +
           format_number(f.slope_ci95);
}

CommandOutput cmd_ramsey(const RunManifest &m, const Config &c) {
    RamseyConfig cfg = experiment_of(c);
    const Protocol protocol = protocol_of(c, "experiment", "protocol", Protocol::Standard);
    cfg.validate();
    const FringeModel model = fringe_model(cfg, protocol);

    CommandOutput o;
    json res;
    res["protocol"] = protocol_name(protocol);
    res["L"] = cfg.n_ions;
    res["T_R"] = cfg.t_ramsey;
    res["omega_R"] = cfg.omega_r;
    res["trials"] = cfg.shots;
    o.summary.emplace_back("protocol", std::string(protocol_name(protocol)));

    std::ostringstream body;
    write_record_header(body);
    std::optional<EstimateRecord> estimate;
    auto try_estimate = [&](const std::function<EstimateRecord()> &fn) {
        check_fringe_unambiguous(cfg, protocol);
        try {
            estimate = fn();
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::DegeneratePoint) {
                throw;
            }
            o.summary.emplace_back("estimate", "none (fringe slope vanishes at the operating point)");
        }
    };

    if (m.expectation_mode) {
        const double s = expected_signal(cfg, protocol);
        res["expected_signal"] = s;
        o.summary.emplace_back("expected_signal", format_number(s));
        try_estimate([&] {
            EstimateRecord e;
            e.protocol = protocol;
            e.n_ions = cfg.n_ions;
            e.t_ramsey = cfg.t_ramsey;
            e.omega_r = cfg.omega_r;
            e.seed = m.seed;
            e.delta_omega = invert_signal(s, cfg.t_ramsey, model);
            // No projection noise in the infinite-shot limit.
            e.sigma = 0;
            e.signal_mean = s;
            return e;
        });
    } else {
        auto records = run_trials(cfg, protocol, m.seed, cfg.shots, m.threads);
        double signal_sum = 0, excitations = 0;
        std::map<int, std::int64_t> counts;
        for (const TrialRecord &r : records) {
            signal_sum += r.signal;
            excitations += cfg.n_ions - r.outcome.n_down;
            counts[r.raw_outcome()] += 1;
            write_trial_row(body, r);
        }
        const double n = static_cast<double>(records.size());
        res["mean_signal"] = signal_sum / n;
        res["mean_excitations"] = excitations / n;
        json hist = json::object();
        for (const auto &[k, v] : counts) {
            hist[std::to_string(k)] = v;
        }
        res["outcome_counts"] = hist;
        o.summary.emplace_back("mean_signal", format_number(signal_sum / n));
        o.summary.emplace_back("mean_excitations", format_number(excitations / n));
        try_estimate([&] { return estimate_frequency(records, EstimationMethod::SingleFringe, model); });
    }
    if (estimate) {
        write_estimate_row(body, *estimate);
        res["estimate"] = to_json(*estimate);
    } else {
        res["estimate"] = nullptr;
    }
    o.csv_body = body.str();
    o.result = res;
    return o;
}

CommandOutput cmd_scaling(const RunManifest &m, const Config &c) {
    if (m.expectation_mode) {
        config_error("--expectation-mode does not apply to 'scaling' (Monte Carlo benchmark)");
    }
    std::vector<int> ions = c.get_ints("scaling", "ions");
    if (ions.empty()) {
        ions = {1, 2, 4, 8};
    }
    const std::int64_t trials = c.get_int("scaling", "trials", 10000);
    BenchOptions opt{m.seed, m.threads, ghz_readout_of(c, "scaling")};
    RamseyConfig tmpl = experiment_of(c);
    ScalingReport report = scan_scaling(ions, tmpl, trials, opt);

    CommandOutput o;
    for (const ScalingFit &f : report.fits) {
        o.summary.emplace_back("fit_" + std::string(protocol_name(f.protocol)), fit_summary(f));
    }
    std::ostringstream body;
    write_scaling_csv(body, report);
    o.csv_body = body.str();
    o.result = to_json(report);
    return o;
}

CommandOutput cmd_dephasing(const RunManifest &m, const Config &c) {
    if (m.expectation_mode) {
        config_error("--expectation-mode does not apply to 'dephasing' (Monte Carlo benchmark)");
    }
    const double gamma = c.get_double("dephasing", "gamma", 0.5);
    const int ions = static_cast<int>(c.get_int("dephasing", "ions", c.get_int("experiment", "ions", 2)));
    const std::int64_t trials = c.get_int("dephasing", "trials", 10000);
    std::vector<double> grid = c.get_doubles("dephasing", "t_grid");
    if (grid.empty()) {
        if (!(gamma > 0) || ions < 1) {
            throw Error(ErrorKind::InvalidArgument, "dephasing benchmark needs gamma > 0 and ions >= 1");
        }
        // Geometric grid spanning both analytic optima with margin.
        const double lo = c.get_double("dephasing", "t_min", 0.2 / (2 * ions * gamma));
        const double hi = c.get_double("dephasing", "t_max", 5.0 / (2 * gamma));
        const std::int64_t points = c.get_int("dephasing", "points", 13);
        if (!(lo > 0) || !(hi > lo) || points < 3) {
            throw Error(ErrorKind::InvalidArgument, "dephasing grid needs 0 < t_min < t_max and points >= 3");
        }
        for (std::int64_t i = 0; i < points; ++i) {
            grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(points - 1)));
        }
    }
    BenchOptions opt{m.seed, m.threads, ghz_readout_of(c, "dephasing")};
    DephasingReport report = dephasing_benchmark(gamma, ions, grid, trials, opt, mode_of(c, "dephasing"));

    CommandOutput o;
    for (const DephasingOptimum *opt_p : {&report.standard, &report.ghz}) {
        o.summary.emplace_back("optimum_" + std::string(protocol_name(opt_p->protocol)),
                               "T_R " + format_number(opt_p->t_opt) + " sigma_sqrt_tau " +
                                   format_number(opt_p->min_value) + (opt_p->at_boundary ? " at_boundary" : ""));
    }
    o.summary.emplace_back("argmin_ratio", format_number(report.argmin_ratio));
    o.summary.emplace_back("min_ratio", format_number(report.min_ratio));
    std::ostringstream body;
    write_dephasing_csv(body, report);
    o.csv_body = body.str();
    o.result = to_json(report);
    return o;
}

CommandOutput cmd_calibrate(const RunManifest &m, const Config &c) {
    TruthModel truth;
    truth.base = experiment_of(c);
    truth.base.shots = c.get_int("calibration", "shots", 10000);
    truth.protocol = protocol_of(c, "calibration", "protocol", Protocol::GhzFinalPulse);
    truth.omega_0 = c.get_double("calibration", "omega_0", 0.0);
    truth.phase_offset = c.get_double("calibration", "phase_offset", 0.0);
    truth.expectation = m.expectation_mode;
    truth.seed = m.seed;
    truth.base.validate();

    CalibrationState start;
    start.t_r1 = c.get_double("calibration", "t_r1", 1.0);
    start.t_r2 = c.get_double("calibration", "t_r2", 10.0);
    start.omega_r1 = c.get_double("calibration", "omega_r1", -0.01);
    start.omega_r2 = c.get_double("calibration", "omega_r2", 0.01);
    start.final_phase = c.get_double("calibration", "final_phase", 0.0);

    const std::string bias = c.get_string("calibration", "bias", "none");
    const double bias_time = c.get_double("calibration", "bias_time", 0.0);
    if (bias != "none" && !(bias_time > 0)) {
        throw Error(ErrorKind::InvalidArgument, "calibration.bias_time must be > 0");
    }
    if (bias == "exponential") {
        truth.bias = [bias_time](double t) { return std::exp(-t / bias_time); };
    } else if (bias == "linear") {
        if (!(bias_time > std::max(start.t_r1, start.t_r2))) {
            throw Error(ErrorKind::InvalidArgument, "linear bias needs bias_time > T_R2 to stay positive");
        }
        truth.bias = [bias_time](double t) { return 1.0 - t / bias_time; };
    } else if (bias != "none") {
        config_error("calibration.bias: expected none, exponential or linear, got '" + bias + "'");
    }

    CalibrationOptions opt;
    opt.n_ions = truth.base.n_ions;
    opt.tolerance = c.get_double("calibration", "tolerance", 0.0);
    opt.max_iterations = static_cast<int>(c.get_int("calibration", "max_iterations", 50));

    SignalSimulator sim = make_signal_simulator(truth);
    CalibrationState result = two_point_calibrate(sim, start, opt);
    const double naive = naive_single_point_estimate(sim, start.omega_0_estimate(), start.t_r2,
                                                     c.get_double("calibration", "naive_phase", kPi / 2),
                                                     opt.n_ions);
    const double fringe_width = kPi / (opt.n_ions * start.t_r2);

    CommandOutput o;
    o.summary.emplace_back("omega_0_truth", format_number(truth.omega_0));
    o.summary.emplace_back("fringe_width", format_number(fringe_width));
    o.summary.emplace_back("calibrated_error", format_number(result.omega_0_estimate() - truth.omega_0));
    o.summary.emplace_back("naive_error", format_number(naive - truth.omega_0));
    std::ostringstream body;
    write_calibration_csv(body, result, naive);
    o.csv_body = body.str();
    json res = to_json(result);
    res["naive_estimate"] = naive;
    res["omega_0_truth"] = truth.omega_0;
    res["fringe_width"] = fringe_width;
    o.result = res;
    return o;
}

struct SignalTable {
    std::vector<double> t;
    std::vector<double> s;
};

SignalTable read_signal_table(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        config_error("cannot read Fourier input '" + path.string() + "'");
    }
    SignalTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#' || line.rfind("T_R", 0) == 0) {
            continue;
        }
        std::istringstream fields(line);
        std::string a, b;
        if (!std::getline(fields, a, ',') || !std::getline(fields, b)) {
            config_error(path.string() + ":" + std::to_string(line_no) + ": expected 'T_R,signal'");
        }
        try {
            table.t.push_back(std::stod(a));
            table.s.push_back(std::stod(b));
        } catch (const std::exception &) {
            config_error(path.string() + ":" + std::to_string(line_no) + ": not a number");
        }
    }
    return table;
}

CommandOutput cmd_fourier(const RunManifest &m, const Config &c) {
    RamseyConfig cfg = experiment_of(c);
    const int harmonics = static_cast<int>(c.get_int("fourier", "harmonics", cfg.n_ions));
    const double dw = c.get_double("fourier", "delta_omega", cfg.detuning());
    SignalTable table;
    std::string source;
    if (c.has("fourier", "input")) {
        fs::path input = c.get_string("fourier", "input", "");
        if (input.is_relative() && !c.base_dir().empty()) {
            input = fs::path(c.base_dir()) / input;
        }
        table = read_signal_table(input);
        source = input.filename().string();
    } else {
        if (dw == 0) {
            throw Error(ErrorKind::InvalidArgument, "simulated Fourier scan needs a nonzero detuning");
        }
        const Protocol protocol = protocol_of(c, "experiment", "protocol", Protocol::Standard);
        const std::int64_t points = c.get_int("fourier", "points", 4 * harmonics + 1);
        const double step = c.get_double("fourier", "t_step", 2 * kPi / (std::abs(dw) * static_cast<double>(points)));
        const double start = c.get_double("fourier", "t_start", step);
        const std::int64_t trials = c.get_int("fourier", "trials", 1000);
        for (std::int64_t i = 0; i < points; ++i) {
            RamseyConfig point = cfg;
            point.t_ramsey = start + static_cast<double>(i) * step;
            double s = 0;
            if (m.expectation_mode) {
                s = expected_signal(point, protocol);
            } else {
                auto records = run_trials(point, protocol, splitmix64_mix(m.seed + static_cast<std::uint64_t>(i)),
                                          trials, m.threads);
                for (const TrialRecord &r : records) {
                    s += r.signal;
                }
                s /= static_cast<double>(records.size());
            }
            table.t.push_back(point.t_ramsey);
            table.s.push_back(s);
        }
        source = "simulated " + std::string(protocol_name(protocol));
    }
    FourierFit fit = fourier_decompose(table.t, table.s, harmonics, dw);
    ChangeDetectionCheck check = check_change_detection(fit, c.get_double("fourier", "threshold", 0.1));

    CommandOutput o;
    o.summary.emplace_back("source", source);
    o.summary.emplace_back("residual_norm", format_number(fit.residual_norm));
    o.summary.emplace_back("samples", std::to_string(fit.n_samples));
    o.summary.emplace_back("change_detection",
                           std::string(check.holds ? "holds" : "violated") + " worst_harmonic " +
                               std::to_string(check.worst_harmonic) + " amplitude " +
                               format_number(check.worst_amplitude) + " threshold " + format_number(check.threshold));
    std::ostringstream body;
    write_fourier_csv(body, fit);
    o.csv_body = body.str();
    json res = to_json(fit);
    res["measurement_overhead"] = fourier_measurement_overhead(fit);
    res["change_detection"] = {{"holds", check.holds},
                               {"worst_harmonic", check.worst_harmonic},
                               {"worst_amplitude", check.worst_amplitude},
                               {"threshold", check.threshold}};
    o.result = res;
    return o;
}

fs::path output_path(const RunManifest &m) {
    return fs::path(m.out_dir) / (m.command + (m.format == "json" ? ".json" : ".csv"));
}

void ensure_writable(const RunManifest &m) {
    fs::path p = output_path(m);
    if (fs::exists(p) && !m.force) {
        throw Error(ErrorKind::InvalidArgument, "refusing to overwrite '" + p.string() + "' without --force");
    }
}

std::string render(const RunManifest &m, const CommandOutput &o) {
    const std::string mode = m.expectation_mode ? "expectation" : "sampled";
    if (m.format == "json") {
        json j;
        j["schema"] = kSummarySchema;
        j["version"] = RAMSEY_VERSION;
        j["command"] = m.command;
        j["config"] = m.config_path;
        j["seed"] = m.seed;
        j["mode"] = mode;
        j["manifest"] = m.hash();
        j["result"] = o.result;
        return j.dump(2) + "\n";
    }
    HeaderFields fields = {
        {"ionramsey", RAMSEY_VERSION},
        {"command", m.command},
        {"config", m.config_path.empty() ? "-" : m.config_path},
        {"seed", std::to_string(m.seed)},
        {"mode", mode},
        {"manifest", m.hash()},
    };
    fields.insert(fields.end(), o.summary.begin(), o.summary.end());
    std::ostringstream out;
    write_comment_header(out, fields);
    out << o.csv_body;
    return out.str();
}

void write_output(const RunManifest &m, const std::string &content, std::ostream &out) {
    ensure_writable(m);
    fs::path p = output_path(m);
    if (!p.parent_path().empty()) {
        fs::create_directories(p.parent_path());
    }
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << content;
    f.close();
    if (!f) {
        throw Error(ErrorKind::InvalidArgument, "failed writing '" + p.string() + "'");
    }
    out << "wrote " << p.string() << '\n';
}

}  // namespace

std::string RunManifest::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::string_view bytes) {
        for (unsigned char ch : bytes) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    };
    mix(command);
    mix(config_text);
    mix(std::to_string(seed));
    mix(format);
    mix(expectation_mode ? "expectation" : "sampled");
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Ramsey spectroscopy with unentangled and GHZ-entangled trapped ions", "ionramsey"};
    app.set_version_flag("--version", RAMSEY_VERSION);
    app.require_subcommand(1);
    RunManifest m;
    const std::pair<const char *, const char *> commands[] = {
        {"ramsey", "Simulate one Ramsey operating point and estimate the detuning"},
        {"scaling", "Scan sigma(dw) versus ion number for both protocols"},
        {"dephasing", "Locate the optimal T_R under dephasing for both protocols"},
        {"calibrate", "Run the two-point bias-robust calibration"},
        {"fourier", "Fit the harmonic decomposition of a fringe scan"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--config", m.config_path, "Experiment configuration file");
        sub->add_option("--seed", m.seed, "Global random seed");
        sub->add_option("--out", m.out_dir, "Output directory");
        sub->add_option("--format", m.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--expectation-mode", m.expectation_mode, "Exact expectations instead of sampled trials");
        sub->add_option("--threads", m.threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--force", m.force, "Overwrite existing outputs");
    }

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("ionramsey");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (std::string &s : storage) {
        argv.push_back(s.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        report_error(err, "usage", e.what(), kExitConfig);
        return kExitConfig;
    }

    try {
        m.command = app.get_subcommands().front()->get_name();
        Config config = Config::load(m.config_path);
        m.config_text = config.text();
        ensure_writable(m);
        CommandOutput o;
        if (m.command == "ramsey") {
            o = cmd_ramsey(m, config);
        } else if (m.command == "scaling") {
            o = cmd_scaling(m, config);
        } else if (m.command == "dephasing") {
            o = cmd_dephasing(m, config);
        } else if (m.command == "calibrate") {
            o = cmd_calibrate(m, config);
        } else {
            o = cmd_fourier(m, config);
        }
        write_output(m, render(m, o), out);
        return kExitOk;
    } catch (const Error &e) {
        const int code = exit_code_for(e.kind());
        report_error(err, error_kind_name(e.kind()), e.what(), code);
        return code;
    } catch (const std::exception &e) {
        report_error(err, "internal", e.what(), kExitFailure);
        return kExitFailure;
    }
}

}  // namespace ramsey::cli
