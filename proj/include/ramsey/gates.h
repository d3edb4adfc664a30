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

#include <string>
#include <string_view>
#include <vector>

#include "ramsey/register.h"

namespace ramsey {

/// Index used for the motional bus in gate descriptors; ions are 1..L.
constexpr int kBusIndex = 0;

enum class GateKind { Rotation, Cnot, BusMap };

/// One step of a logic sequence.
///  - Rotation: `a` = ion, `theta`/`phi` as in PulseSpec.
///  - Cnot: `a` = control, `b` = target (either may be kBusIndex).
///  - BusMap: `a` = ion whose state is exchanged with the bus.
struct Gate {
    GateKind kind = GateKind::Rotation;
    int a = 1;
    int b = 0;
    double theta = 0;
    double phi = 0;

    Gate inverse() const;
    bool operator==(const Gate &) const = default;
};

class GateSequence {
   public:
    GateSequence() = default;
    GateSequence(int n_ions, bool uses_bus) : n_ions_(n_ions), uses_bus_(uses_bus) {
    }

    int n_ions() const {
        return n_ions_;
    }
    bool uses_bus() const {
        return uses_bus_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }

    void push(const Gate &g);
    /// Inverse gates in reverse order.
    GateSequence inverse() const;

    /// Line format: `ROT i theta phi`, `CNOT c t`, `BUSMAP i`, with a leading
    /// `# ions L` header. Numbers are printed with 17 significant digits so a
    /// parse of the text replays bit-identically.
    std::string to_text() const;
    static GateSequence from_text(std::string_view text);

    bool operator==(const GateSequence &) const = default;

   private:
    int n_ions_ = 0;
    bool uses_bus_ = false;
    std::vector<Gate> gates_;
};

QubitRegister apply_gate(QubitRegister reg, const Gate &gate);
QubitRegister replay(QubitRegister reg, const GateSequence &seq);

/// Flips `target` on basis states where `control` is up. kBusIndex addresses the bus.
QubitRegister cnot(QubitRegister reg, int control, int target);

/// Three-step bus-mediated CN between ions i and j: map ion i onto the bus,
/// CN from the bus to ion j, map back. Requires the bus in |0> on entry
/// (ErrorKind::Protocol otherwise) and leaves it there.
QubitRegister cn_via_bus(QubitRegister reg, int i, int j);

/// The three descriptors cn_via_bus applies.
std::vector<Gate> cn_via_bus_gates(int i, int j);

/// Tr(rho_bus^2) of the reduced bus state.
double bus_purity(const QubitRegister &reg);

struct GhzPreparation {
    QubitRegister state;
    GateSequence sequence;
};

/// (|down...down> + e^{i phi0} |up...up>)/sqrt(2) from the all-down state, by
/// a pi/2 pulse on ion 1 followed by CN(1, k) for k = 2..L. The pulse phase
/// carries phi0. When the register has a bus, each CN runs through it.
GhzPreparation prepare_ghz(QubitRegister reg, double phi0);

/// Runs the inverse of a preparation sequence. `final_phase` is subtracted
/// from the phase of the last pulse, which shifts the ion-1 fringe to
/// cos(L dw T + final_phase).
QubitRegister reverse_prep(QubitRegister reg, const GateSequence &seq, double final_phase = 0);

}  // namespace ramsey
