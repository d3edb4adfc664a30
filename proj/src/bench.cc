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

#include "ramsey/bench.h"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "ramsey/error.h"

namespace ramsey {

namespace {

constexpr double kPi = std::numbers::pi;

ScalingFit fit_log_log(Protocol protocol, const std::vector<ScalingRow> &rows) {
    std::vector<double> xs, ys;
    for (const ScalingRow &r : rows) {
        if (r.protocol == protocol) {
            xs.push_back(std::log(static_cast<double>(r.n_ions)));
            ys.push_back(std::log(r.sigma));
        }
    }
    ScalingFit fit;
    fit.protocol = protocol;
    const double n = static_cast<double>(xs.size());
    if (xs.size() < 2) {
        fit.slope = std::numeric_limits<double>::quiet_NaN();
        fit.slope_stderr = fit.slope_ci95 = std::numeric_limits<double>::infinity();
        return fit;
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / n;
        my += ys[i] / n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    if (xs.size() < 3) {
        fit.slope_stderr = fit.slope_ci95 = std::numeric_limits<double>::infinity();
        return fit;
    }
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (my + fit.slope * (xs[i] - mx));
        rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2) / sxx);
    boost::math::students_t dist(n - 2);
    fit.slope_ci95 = boost::math::quantile(boost::math::complement(dist, 0.025)) * fit.slope_stderr;
    return fit;
}

}  // namespace

double shot_noise_limit(int n_ions, double t_ramsey, double tau) {
    return 1.0 / std::sqrt(n_ions * t_ramsey * tau);
}

double heisenberg_limit(int n_ions, double t_ramsey, double tau) {
    return 1.0 / (n_ions * std::sqrt(t_ramsey * tau));
}

OperatingPoint measure_operating_point(RamseyConfig cfg, Protocol protocol, std::int64_t trials,
                                       const BenchOptions &options) {
    // Half-fringe: the experimenter's prior is dw = 0 and the readout phase
    // puts that on the steepest part of the fringe.
    cfg.final_phase = kPi / 2;
    check_fringe_unambiguous(cfg, protocol);
    auto records = run_trials(cfg, protocol, options.seed, trials, options.threads);
    SlopeMeasurement slope = measure_fringe_slope(cfg, protocol, options.seed, trials, options.threads);

    FringeModel model = fringe_model(cfg, protocol);
    const double k = model.multiplier;
    const double contrast = std::abs(slope.slope) / (k * cfg.t_ramsey * std::abs(std::sin(model.operating_phase(cfg.t_ramsey))));
    model.contrast = [contrast](double) { return contrast; };
    OperatingPoint point;
    point.estimate = estimate_frequency(records, EstimationMethod::SingleFringe, model);
    point.contrast = contrast;
    return point;
}

ScalingReport scan_scaling(std::span<const int> ion_counts, const RamseyConfig &cfg_template, std::int64_t trials,
                           const BenchOptions &options) {
    for (int n : ion_counts) {
        if (n < 1 || n > kMaxIons) {
            throw Error(ErrorKind::Capacity, "ion count " + std::to_string(n) + " outside the state-vector cap");
        }
    }
    ScalingReport report;
    report.seed = options.seed;
    for (int n : ion_counts) {
        for (Protocol protocol : {Protocol::Standard, options.ghz_readout}) {
            RamseyConfig cfg = cfg_template;
            cfg.n_ions = n;
            OperatingPoint point = measure_operating_point(cfg, protocol, trials, options);
            ScalingRow row;
            row.protocol = protocol;
            row.n_ions = n;
            row.t_ramsey = cfg.t_ramsey;
            row.tau = point.estimate.tau;
            row.trials = trials;
            row.sigma = point.estimate.sigma;
            row.limit = protocol == Protocol::Standard ? shot_noise_limit(n, cfg.t_ramsey, row.tau)
                                                       : heisenberg_limit(n, cfg.t_ramsey, row.tau);
            row.ratio = row.sigma / row.limit;
            report.rows.push_back(row);
        }
    }
    report.fits.push_back(fit_log_log(Protocol::Standard, report.rows));
    report.fits.push_back(fit_log_log(options.ghz_readout, report.rows));
    return report;
}

DephasingReport dephasing_benchmark(double gamma, int n_ions, std::span<const double> t_grid, std::int64_t trials,
                                    const BenchOptions &options, DephasingMode mode) {
    if (!(gamma > 0)) {
        throw Error(ErrorKind::InvalidArgument, "dephasing benchmark needs gamma > 0");
    }
    if (t_grid.size() < 3) {
        throw Error(ErrorKind::InvalidArgument, "dephasing benchmark needs at least three T_R values");
    }
    if (!std::is_sorted(t_grid.begin(), t_grid.end()) || !(t_grid.front() > 0)) {
        throw Error(ErrorKind::InvalidArgument, "T_R grid must be positive and ascending");
    }
    DephasingReport report;
    report.gamma = gamma;
    report.n_ions = n_ions;
    report.mode = mode;
    report.trials = trials;
    report.seed = options.seed;

    auto evaluate = [&](Protocol protocol, double t, bool refinement) {
        RamseyConfig cfg;
        cfg.n_ions = n_ions;
        cfg.t_ramsey = t;
        cfg.noise = NoiseSpec{gamma, mode};
        OperatingPoint point = measure_operating_point(cfg, protocol, trials, options);
        const double value = point.estimate.sigma * std::sqrt(point.estimate.tau);
        report.points.push_back(DephasingPoint{protocol, t, value, point.contrast, refinement});
        return value;
    };

    auto optimise = [&](Protocol protocol) {
        std::vector<double> values;
        for (double t : t_grid) {
            values.push_back(evaluate(protocol, t, false));
        }
        const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
        DephasingOptimum opt;
        opt.protocol = protocol;
        opt.t_opt = t_grid[best];
        opt.min_value = values[best];
        if (best == 0 || best + 1 == t_grid.size()) {
            opt.at_boundary = true;
            return opt;
        }
        const double inv_phi = (std::sqrt(5.0) - 1) / 2;
        double a = t_grid[best - 1], b = t_grid[best + 1];
        double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
        double fc = evaluate(protocol, c, true), fd = evaluate(protocol, d, true);
        while ((b - a) > 1e-3 * opt.t_opt) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = evaluate(protocol, c, true);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = evaluate(protocol, d, true);
            }
        }
        for (const DephasingPoint &p : report.points) {
            if (p.protocol == protocol && p.sigma_sqrt_tau < opt.min_value) {
                opt.min_value = p.sigma_sqrt_tau;
                opt.t_opt = p.t_ramsey;
            }
        }
        return opt;
    };

    report.standard = optimise(Protocol::Standard);
    report.ghz = optimise(options.ghz_readout);
    report.argmin_ratio = report.ghz.t_opt / report.standard.t_opt;
    report.min_ratio = report.ghz.min_value / report.standard.min_value;
    return report;
}

}  // namespace ramsey
