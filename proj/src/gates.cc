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

#include "ramsey/gates.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ramsey/error.h"

namespace ramsey {

namespace {

std::size_t stride_of(const QubitRegister &reg, int index) {
    return index == kBusIndex ? reg.bus_stride() : reg.ion_stride(index);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void check_distinct(int a, int b) {
    if (a == b) {
        throw Error(ErrorKind::InvalidArgument, "control and target must differ");
    }
}

}  // namespace

Gate Gate::inverse() const {
    Gate g = *this;
    if (kind == GateKind::Rotation) {
        g.phi = std::remainder(phi + std::numbers::pi, 2 * std::numbers::pi);
    }
    return g;
}

void GateSequence::push(const Gate &g) {
    if (g.kind == GateKind::BusMap || (g.kind == GateKind::Cnot && (g.a == kBusIndex || g.b == kBusIndex))) {
        uses_bus_ = true;
    }
    gates_.push_back(g);
}

GateSequence GateSequence::inverse() const {
    GateSequence out(n_ions_, uses_bus_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.gates_.push_back(it->inverse());
    }
    return out;
}

std::string GateSequence::to_text() const {
    std::ostringstream out;
    out << "# ions " << n_ions_ << "\n";
    for (const Gate &g : gates_) {
        switch (g.kind) {
            case GateKind::Rotation:
                out << "ROT " << g.a << ' ' << format_double(g.theta) << ' ' << format_double(g.phi) << '\n';
                break;
            case GateKind::Cnot:
                out << "CNOT " << g.a << ' ' << g.b << '\n';
                break;
            case GateKind::BusMap:
                out << "BUSMAP " << g.a << '\n';
                break;
        }
    }
    return out.str();
}

GateSequence GateSequence::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    GateSequence seq;
    int line_no = 0;
    auto fail = [&](const std::string &why) {
        throw Error(ErrorKind::InvalidArgument, "gate sequence line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string op;
        if (!(fields >> op)) {
            continue;
        }
        if (op == "#") {
            std::string key;
            int value = 0;
            if (fields >> key >> value && key == "ions") {
                seq.n_ions_ = value;
            }
            continue;
        }
        Gate g;
        if (op == "ROT") {
            g.kind = GateKind::Rotation;
            if (!(fields >> g.a >> g.theta >> g.phi)) fail("expected ROT i theta phi");
        } else if (op == "CNOT") {
            g.kind = GateKind::Cnot;
            if (!(fields >> g.a >> g.b)) fail("expected CNOT c t");
        } else if (op == "BUSMAP") {
            g.kind = GateKind::BusMap;
            if (!(fields >> g.a)) fail("expected BUSMAP i");
        } else {
            fail("unknown gate '" + op + "'");
        }
        std::string extra;
        if (fields >> extra) fail("trailing field '" + extra + "'");
        seq.push(g);
    }
    if (seq.n_ions_ < 1) {
        throw Error(ErrorKind::InvalidArgument, "gate sequence is missing the '# ions L' header");
    }
    return seq;
}

QubitRegister apply_gate(QubitRegister reg, const Gate &gate) {
    switch (gate.kind) {
        case GateKind::Rotation:
            return apply_rotation(std::move(reg), PulseSpec::single(gate.a, gate.theta, gate.phi));
        case GateKind::Cnot:
            return cnot(std::move(reg), gate.a, gate.b);
        case GateKind::BusMap: {
            std::size_t ion = reg.ion_stride(gate.a);
            kernels::active().apply_swap(reg.amplitudes(), ion, reg.bus_stride());
            return reg;
        }
    }
    return reg;
}

QubitRegister replay(QubitRegister reg, const GateSequence &seq) {
    if (seq.n_ions() != reg.n_ions()) {
        throw Error(ErrorKind::InvalidArgument, "sequence is for " + std::to_string(seq.n_ions()) +
                                                    " ions, register has " + std::to_string(reg.n_ions()));
    }
    if (seq.uses_bus() && !reg.has_bus()) {
        throw Error(ErrorKind::InvalidArgument, "sequence uses the bus but the register has none");
    }
    for (const Gate &g : seq.gates()) {
        reg = apply_gate(std::move(reg), g);
    }
    return reg;
}

QubitRegister cnot(QubitRegister reg, int control, int target) {
    check_distinct(control, target);
    std::size_t c = stride_of(reg, control);
    std::size_t t = stride_of(reg, target);
    kernels::active().apply_cnot(reg.amplitudes(), c, t);
    return reg;
}

std::vector<Gate> cn_via_bus_gates(int i, int j) {
    return {
        Gate{GateKind::BusMap, i, 0, 0, 0},
        Gate{GateKind::Cnot, kBusIndex, j, 0, 0},
        Gate{GateKind::BusMap, i, 0, 0, 0},
    };
}

QubitRegister cn_via_bus(QubitRegister reg, int i, int j) {
    check_distinct(i, j);
    if (i == kBusIndex || j == kBusIndex) {
        throw Error(ErrorKind::InvalidArgument, "cn_via_bus acts on two ions");
    }
    const std::size_t bus = reg.bus_stride();
    double excited = 0;
    auto amps = reg.amplitudes();
    for (std::size_t k = bus; k < amps.size(); k += 2 * bus) {
        excited += std::norm(amps[k]);
    }
    if (excited > kStateTolerance) {
        throw Error(ErrorKind::Protocol, "bus is not in its ground state before the CN");
    }
    for (const Gate &g : cn_via_bus_gates(i, j)) {
        reg = apply_gate(std::move(reg), g);
    }
    return reg;
}

double bus_purity(const QubitRegister &reg) {
    const std::size_t bus = reg.bus_stride();
    auto amps = reg.amplitudes();
    double p0 = 0, p1 = 0;
    cplx coherence = 0;
    for (std::size_t k = 0; k < amps.size(); k += 2 * bus) {
        p0 += std::norm(amps[k]);
        p1 += std::norm(amps[k + bus]);
        coherence += amps[k] * std::conj(amps[k + bus]);
    }
    return p0 * p0 + p1 * p1 + 2 * std::norm(coherence);
}

GhzPreparation prepare_ghz(QubitRegister reg, double phi0) {
    if (1.0 - std::norm(reg.amplitude(0)) > kStateTolerance) {
        throw Error(ErrorKind::Protocol, "GHZ preparation needs the all-down input state");
    }
    const int n = reg.n_ions();
    GateSequence seq(n, reg.has_bus());
    // R(pi/2, a)|down> = (|down> - i e^{ia} |up>)/sqrt(2); a = phi0 + pi/2 gives e^{i phi0}.
    seq.push(Gate{GateKind::Rotation, 1, 0, std::numbers::pi / 2, phi0 + std::numbers::pi / 2});
    for (int k = 2; k <= n; ++k) {
        if (reg.has_bus()) {
            for (const Gate &g : cn_via_bus_gates(1, k)) {
                seq.push(g);
            }
        } else {
            seq.push(Gate{GateKind::Cnot, 1, k, 0, 0});
        }
    }
    QubitRegister state = replay(std::move(reg), seq);
    return GhzPreparation{std::move(state), std::move(seq)};
}

QubitRegister reverse_prep(QubitRegister reg, const GateSequence &seq, double final_phase) {
    GateSequence undo = seq.inverse();
    if (final_phase != 0) {
        GateSequence shifted(undo.n_ions(), undo.uses_bus());
        const auto &gates = undo.gates();
        std::size_t last_rotation = gates.size();
        for (std::size_t k = 0; k < gates.size(); ++k) {
            if (gates[k].kind == GateKind::Rotation) {
                last_rotation = k;
            }
        }
        for (std::size_t k = 0; k < gates.size(); ++k) {
            Gate g = gates[k];
            if (k == last_rotation) {
                g.phi -= final_phase;
            }
            shifted.push(g);
        }
        undo = std::move(shifted);
    }
    return replay(std::move(reg), undo);
}

}  // namespace ramsey
