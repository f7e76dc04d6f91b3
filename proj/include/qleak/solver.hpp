// Copyright 2026 The qleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qleak {

struct SolverConfig {
    double tol = 1e-9;  // relative stationarity tolerance
    int maxIter = 5000;
    int restarts = 8;
    std::uint64_t seed = 0;
    double armijoBeta = 0.5;
    double armijoSigma = 1e-4;
    bool recordTrace = false;
};

/// Capacity, Arimoto capacity and radius are expected to agree within this.
inline constexpr double kCapacityTol = 2e-3;
/// Reporting threshold for composition gaps.
inline constexpr double kCompositionTol = 1e-4;

struct SolveReport {
    bool converged = true;
    int iterations = 0;
    int restarts = 0;
    double residual = 0.0;
    /// Per-iteration objective of the returned run, in the ascent orientation.
    std::optional<std::vector<double>> objectiveTrace;

    /// Fold a nested solve into this one.
    void absorb(const SolveReport& inner) {
        converged = converged && inner.converged;
        iterations += inner.iterations;
    }
};

}  // namespace qleak
