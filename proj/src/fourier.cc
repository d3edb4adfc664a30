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

#include "ramsey/fourier.h"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ramsey/error.h"

namespace ramsey {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(std::span<const double> t, std::span<const double> s) {
    if (t.size() != s.size()) {
        throw Error(ErrorKind::InvalidArgument, "grid and signal lengths differ");
    }
    if (t.size() < 2) {
        throw Error(ErrorKind::Underdetermined, "need at least two samples");
    }
}

double wrap_phase(double x) {
    double r = std::remainder(x, 2 * kPi);
    return r <= -kPi ? r + 2 * kPi : r;
}

Eigen::VectorXd as_vector(std::span<const double> xs) {
    return Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

// Linear LSQ fit at fixed frequency: returns (a, b, c) and residual norm.
double sinusoid_residual(std::span<const double> t, const Eigen::VectorXd &y, double w, Eigen::Vector3d *coef) {
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd A(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        A(i, 0) = std::cos(w * t[static_cast<std::size_t>(i)]);
        A(i, 1) = std::sin(w * t[static_cast<std::size_t>(i)]);
        A(i, 2) = 1.0;
    }
    Eigen::Vector3d x = A.colPivHouseholderQr().solve(y);
    if (coef != nullptr) {
        *coef = x;
    }
    return (A * x - y).norm();
}

}  // namespace

FourierFit fourier_decompose(std::span<const double> t_grid, std::span<const double> signal, int n_harmonics,
                             double delta_omega) {
    check_grid(t_grid, signal);
    if (n_harmonics < 1) {
        throw Error(ErrorKind::InvalidArgument, "need at least one harmonic");
    }
    if (delta_omega == 0) {
        throw Error(ErrorKind::InvalidArgument, "delta_omega must be nonzero");
    }
    const std::size_t n = t_grid.size();
    const std::size_t unknowns = 2 * static_cast<std::size_t>(n_harmonics) + 1;
    if (n < unknowns) {
        throw Error(ErrorKind::Underdetermined, "need at least 2L+1 samples");
    }
    const double step = (t_grid.back() - t_grid.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((t_grid[i] - t_grid[i - 1]) - step) > 1e-9 * std::abs(step)) {
            throw Error(ErrorKind::InvalidArgument, "T_R grid is not uniform");
        }
    }
    const double period = 2 * kPi / std::abs(delta_omega);
    if (std::abs(step) * static_cast<double>(n) < period * (1 - 1e-9)) {
        throw Error(ErrorKind::Underdetermined, "grid does not cover one period of the slowest component");
    }

    const auto rows = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd A(rows, static_cast<Eigen::Index>(unknowns));
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double t = t_grid[static_cast<std::size_t>(i)];
        for (int p = 1; p <= n_harmonics; ++p) {
            A(i, 2 * (p - 1)) = std::cos(p * delta_omega * t);
            A(i, 2 * (p - 1) + 1) = std::sin(p * delta_omega * t);
        }
        A(i, static_cast<Eigen::Index>(unknowns) - 1) = 1.0;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-10);
    if (qr.rank() < static_cast<Eigen::Index>(unknowns)) {
        throw Error(ErrorKind::RankDeficient, "harmonic design matrix is rank deficient on this grid");
    }
    const Eigen::VectorXd y = as_vector(signal);
    const Eigen::VectorXd x = qr.solve(y);

    FourierFit fit;
    fit.n_harmonics = n_harmonics;
    fit.delta_omega = delta_omega;
    fit.n_samples = n;
    fit.offset = x(static_cast<Eigen::Index>(unknowns) - 1);
    for (int p = 1; p <= n_harmonics; ++p) {
        // a cos + b sin = C cos(x + xi) with a = C cos xi, b = -C sin xi.
        const double a = x(2 * (p - 1));
        const double b = x(2 * (p - 1) + 1);
        fit.amplitude.push_back(std::hypot(a, b));
        fit.phase.push_back(wrap_phase(std::atan2(-b, a)));
    }
    fit.residual_norm = (A * x - y).norm();
    return fit;
}

std::vector<double> synthesize(const FourierFit &fit, std::span<const double> t_grid) {
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        double s = fit.offset;
        for (int p = 1; p <= fit.n_harmonics; ++p) {
            s += fit.amplitude_of(p) * std::cos(p * fit.delta_omega * t + fit.phase_of(p));
        }
        out.push_back(s);
    }
    return out;
}

FrequencyFit fit_fringe_frequency(std::span<const double> t_grid, std::span<const double> signal, double omega_lo,
                                  double omega_hi) {
    check_grid(t_grid, signal);
    if (t_grid.size() < 4) {
        throw Error(ErrorKind::Underdetermined, "frequency fit needs at least four samples");
    }
    if (!(omega_hi > omega_lo)) {
        throw Error(ErrorKind::InvalidArgument, "empty frequency search interval");
    }
    const Eigen::VectorXd y = as_vector(signal);
    auto residual = [&](double w) { return sinusoid_residual(t_grid, y, w, nullptr); };

    constexpr int kScan = 2000;
    const double dw = (omega_hi - omega_lo) / kScan;
    int best = 0;
    double best_r = residual(omega_lo);
    for (int i = 1; i <= kScan; ++i) {
        double r = residual(omega_lo + i * dw);
        if (r < best_r) {
            best_r = r;
            best = i;
        }
    }
    double a = omega_lo + std::max(best - 1, 0) * dw;
    double b = omega_lo + std::min(best + 1, kScan) * dw;
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = residual(c), fd = residual(d);
    for (int it = 0; it < 80 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = residual(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = residual(d);
        }
    }
    double w = 0.5 * (a + b);
    Eigen::Vector3d lin;
    sinusoid_residual(t_grid, y, w, &lin);

    // Gauss-Newton on (a, b, c, w).
    Eigen::Vector4d theta(lin(0), lin(1), lin(2), w);
    const auto n = static_cast<Eigen::Index>(t_grid.size());
    for (int it = 0; it < 20; ++it) {
        Eigen::MatrixXd J(n, 4);
        Eigen::VectorXd r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double t = t_grid[static_cast<std::size_t>(i)];
            const double cw = std::cos(theta(3) * t), sw = std::sin(theta(3) * t);
            r(i) = theta(0) * cw + theta(1) * sw + theta(2) - y(i);
            J(i, 0) = cw;
            J(i, 1) = sw;
            J(i, 2) = 1.0;
            J(i, 3) = t * (-theta(0) * sw + theta(1) * cw);
        }
        Eigen::Vector4d step = J.colPivHouseholderQr().solve(-r);
        theta += step;
        if (std::abs(step(3)) <= 1e-15 * std::max(1.0, std::abs(theta(3)))) {
            break;
        }
    }
    FrequencyFit fit;
    fit.omega = theta(3);
    fit.amplitude = std::hypot(theta(0), theta(1));
    fit.phase = wrap_phase(std::atan2(-theta(1), theta(0)));
    fit.offset = theta(2);
    Eigen::VectorXd model(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = t_grid[static_cast<std::size_t>(i)];
        model(i) = theta(0) * std::cos(theta(3) * t) + theta(1) * std::sin(theta(3) * t) + theta(2);
    }
    fit.residual_norm = (model - y).norm();
    return fit;
}

ChangeDetectionCheck check_change_detection(const FourierFit &fit, double threshold) {
    ChangeDetectionCheck check;
    check.threshold = threshold;
    for (int p = 1; p < fit.n_harmonics; ++p) {
        const double c = fit.amplitude_of(p);
        if (c > check.worst_amplitude) {
            check.worst_amplitude = c;
            check.worst_harmonic = p;
        }
    }
    check.holds = check.worst_amplitude < threshold;
    return check;
}

}  // namespace ramsey
