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
#include <ostream>
#include <string>
#include <vector>

namespace ramsey::cli {

/// Process exit codes.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNonConvergence = 4;

struct RunManifest {
    std::string command;
    std::string config_path;
    std::string config_text;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string format = "csv";
    bool expectation_mode = false;
    bool force = false;
    /// Worker threads. Not part of the manifest hash: outputs must not depend on it.
    int threads = 1;

    /// FNV-1a over command, config contents, seed, format and mode, as 16 hex digits.
    std::string hash() const;
};

/// Runs one CLI invocation. `args` excludes the program name. Success
/// messages go to `out`; failures print one JSON object to `err`.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace ramsey::cli
