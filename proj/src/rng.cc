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

#include "ramsey/rng.h"

#include <cmath>
#include <numbers>

namespace ramsey {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t global_seed, std::uint64_t trial_index, StreamPurpose purpose) {
    std::uint64_t k = splitmix64_mix(global_seed + kGoldenGamma);
    k = splitmix64_mix(k ^ (trial_index * 0xD1B54A32D192ED03ULL));
    k = splitmix64_mix(k ^ (static_cast<std::uint64_t>(purpose) * 0x8CB92BA72F3D8DD7ULL));
    key_ = k;
}

RngStream::result_type RngStream::operator()() {
    ++counter_;
    return splitmix64_mix(key_ + counter_ * kGoldenGamma);
}

double RngStream::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    // 1 - u lies in (0, 1], so the log is finite.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ramsey
