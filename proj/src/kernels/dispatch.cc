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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "src/kernels/kernels_internal.h"

namespace ramsey::kernels {

namespace {

bool cpu_has_avx2() {
#if RAMSEY_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable &startup_choice() {
    static const KernelTable &choice = [&]() -> const KernelTable & {
        const char *forced = std::getenv("RAMSEY_KERNELS");
        if (forced != nullptr && std::string_view(forced) == "scalar") {
            return scalar();
        }
        const KernelTable *simd = avx2();
        return simd != nullptr ? *simd : scalar();
    }();
    return choice;
}

std::atomic<const KernelTable *> override_table{nullptr};

}  // namespace

const KernelTable *avx2() {
#if RAMSEY_HAVE_AVX2
    static const bool supported = cpu_has_avx2();
    return supported ? &avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable &active() {
    const KernelTable *t = override_table.load(std::memory_order_acquire);
    return t != nullptr ? *t : startup_choice();
}

void set_active(const KernelTable *table) {
    override_table.store(table, std::memory_order_release);
}

}  // namespace ramsey::kernels
