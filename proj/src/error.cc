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

#include "ramsey/error.h"

namespace ramsey {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return "invalid_argument";
        case ErrorKind::Capacity:
            return "capacity";
        case ErrorKind::Protocol:
            return "protocol";
        case ErrorKind::DegeneratePoint:
            return "degenerate_point";
        case ErrorKind::NonConvergence:
            return "non_convergence";
        case ErrorKind::AmbiguousFringe:
            return "ambiguous_fringe";
        case ErrorKind::Underdetermined:
            return "underdetermined";
        case ErrorKind::RankDeficient:
            return "rank_deficient";
        case ErrorKind::Config:
            return "config";
    }
    return "unknown";
}

}  // namespace ramsey
