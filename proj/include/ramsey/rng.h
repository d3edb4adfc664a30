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
#include <limits>

namespace ramsey {

/// What a stream is used for inside one trial. Separate purposes give
/// independent streams so that, e.g., the number of noise draws never shifts
/// the measurement draws.
enum class StreamPurpose : std::uint64_t {
    Measurement = 1,
    Noise = 2,
    Imperfection = 3,
    Bias = 4,
};

/// Counter-based random stream keyed by (global seed, trial index, purpose).
///
/// Output k is `mix(key + (k + 1) * golden_gamma)` with the SplitMix64 finalizer,
/// so any stream can be constructed directly from its key without touching
/// other streams. Satisfies UniformRandomBitGenerator.
class RngStream {
   public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t global_seed, std::uint64_t trial_index,
              StreamPurpose purpose = StreamPurpose::Measurement);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal deviate (Box-Muller, no cached second value).
    double normal();

    std::uint64_t key() const {
        return key_;
    }

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace ramsey
