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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ramsey/kernels.h"
#include "ramsey/rng.h"

namespace ramsey {

/// Largest ion count a dense register will allocate.
constexpr int kMaxIons = 24;

/// Tolerance used for every normalization / purity / ground-state check.
constexpr double kStateTolerance = 1e-12;

/// Pure state of L two-level ions, optionally with one motional bus qubit.
///
/// Basis ordering: ion 1 is the most significant bit, the bus (when present)
/// the least significant. Bit value 0 is |down>, 1 is |up>.
class QubitRegister {
   public:
    /// All ions in |down>, bus in |0>. Throws ErrorKind::Capacity outside [1, kMaxIons].
    QubitRegister(int n_ions, bool has_bus);

    /// Wraps explicit amplitudes; throws unless the length matches and the
    /// norm is 1 within kStateTolerance.
    static QubitRegister from_amplitudes(int n_ions, bool has_bus, std::vector<cplx> amplitudes);

    int n_ions() const {
        return n_ions_;
    }
    bool has_bus() const {
        return has_bus_;
    }
    int n_bits() const {
        return n_ions_ + (has_bus_ ? 1 : 0);
    }
    std::size_t dimension() const {
        return amps_.size();
    }

    /// `1 << bit` for ion `ion` (1-based). Throws InvalidArgument when out of range.
    std::size_t ion_stride(int ion) const;
    /// Stride of the bus bit. Throws Protocol when the register has no bus.
    std::size_t bus_stride() const;
    /// Bits belonging to ions (bus excluded).
    std::size_t ion_mask() const;

    /// Number of ions in |up> for a basis index; the bus bit is ignored.
    int excitations(std::size_t basis) const;
    bool ion_is_up(std::size_t basis, int ion) const;

    /// Basis index with the given ions up (1-based ion numbers), bus in |0>.
    std::size_t basis_index(std::span<const int> up_ions) const;

    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    std::span<cplx> amplitudes() {
        return amps_;
    }
    cplx amplitude(std::size_t basis) const {
        return amps_.at(basis);
    }

    double norm_squared() const;

   private:
    QubitRegister() = default;
    int n_ions_ = 0;
    bool has_bus_ = false;
    std::vector<cplx> amps_;
};

QubitRegister new_register(int n_ions, bool has_bus);

/// Resonant pulse R(theta, phi) = exp[-i theta/2 (cos phi X + sin phi Y)] on each
/// target ion. `phase_offsets`, when non-empty, adds a per-target phase
/// (same length as `targets`).
struct PulseSpec {
    double theta = 0;
    double phi = 0;
    std::vector<int> targets;
    std::vector<double> phase_offsets;

    /// Throws InvalidArgument for an empty / out-of-range / duplicated target set.
    void validate(int n_ions) const;
    /// Every ion 1..n_ions.
    static PulseSpec all(int n_ions, double theta, double phi);
    static PulseSpec single(int ion, double theta, double phi);
};

Mat2 rotation_matrix(double theta, double phi);

QubitRegister apply_rotation(QubitRegister reg, const PulseSpec &pulse);

/// Free precession for time `t` in the frame rotating at omega_R: a basis
/// state with p ions up picks up exp(+i p delta_omega t).
QubitRegister free_evolve(QubitRegister reg, double delta_omega, double t);

enum class ObservableKind { Jz, Parity };

/// Spin expectation with eigenvalues +-1/2 per ion (+1/2 for |up>).
struct ObservableValue {
    ObservableKind kind;
    int n_ions;
    double value;

    /// Jz scaled to [-1, 1] by 2/L; parity scaled by 2^L.
    double normalized() const;
};

ObservableValue expect_jz(const QubitRegister &reg);
/// Expectation of the product of every ion's S_z.
ObservableValue expect_parity(const QubitRegister &reg);
/// <S_z> of a single ion.
double expect_ion_sz(const QubitRegister &reg, int ion);

/// One projective z-basis readout of every ion (and the bus, which is then ignored).
struct Outcome {
    std::size_t basis = 0;
    /// Basis index with the bus bit removed: ion 1 is bit L-1.
    std::size_t ion_bits = 0;
    int n_down = 0;
    /// Product of per-ion signs, +1 for |up>.
    int parity = 1;
};

Outcome outcome_from_basis(int n_ions, bool has_bus, std::size_t basis);

/// Born-rule sampler over a fixed state. Built once, then each draw needs a
/// single uniform variate, so per-trial streams stay independent of batching.
class BornSampler {
   public:
    explicit BornSampler(const QubitRegister &reg);
    std::size_t sample(double uniform01) const;
    Outcome draw(RngStream &rng) const;
    std::span<const double> probabilities() const {
        return probs_;
    }

   private:
    int n_ions_;
    bool has_bus_;
    std::vector<double> probs_;
    std::vector<double> cdf_;
};

/// `shots` independent readouts of copies of `reg`; the register is untouched.
std::vector<Outcome> sample_measurement(const QubitRegister &reg, RngStream &rng, std::int64_t shots);

}  // namespace ramsey
