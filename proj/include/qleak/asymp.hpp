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

#include <vector>

#include "qleak/hermlin.hpp"
#include "qleak/leakcore.hpp"
#include "qleak/solver.hpp"

namespace qleak {

struct PowerPair {
    DensityMatrix rho;
    HermitianOperator sigma;
};

/// (rho^{(x)n}, sigma^{(x)n}) for n in {1, 2, 3}; the joint dimension is capped at 64.
PowerPair tensor_power_pair(const DensityMatrix& rho, const HermitianOperator& sigma, int n);

struct PinchingBracket {
    double lower = 0.0;          // D*(pinch_sigma(rho) || sigma)
    double spectralLower = 0.0;  // D*(rho || sigma) - c log (number of distinct eigenvalues of sigma), c = 1 (alpha <= 2) or 2
    double upper = 0.0;          // D*(rho || sigma)
};

/// Bracket around the measured divergence from the pinching inequality.
PinchingBracket pinching_bracket(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha);

struct RegularizationTrace {
    std::vector<int> ns;
    std::vector<double> perLetterValues;  // (1/n) value at each n
    double limitReference = 0.0;
    std::vector<PinchingBracket> bounds;  // per-letter brackets; empty for capacity trends
    /// Finite-n facts checked while building the trace.
    bool withinReference = true;  // every per-letter value <= limitReference + tolerance
    bool superAdditive = true;    // per-letter value at n=2 >= value at n=1 - tolerance
    SolveReport report;
};

/// (1/n) D^M(rho^{(x)n} || sigma^{(x)n}) for n = 1..nMax against the sandwiched
/// divergence. alpha >= 1/2, nMax <= 3.
RegularizationTrace regularized_divergence_trace(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha,
                                                 int nMax = 3, const SolverConfig& cfg = {});

/// (1/n) measured capacity of the n-fold product of a binary qubit channel,
/// against its sandwiched capacity. alpha > 1, nMax <= 2.
RegularizationTrace regularized_capacity_trend(const CQState& channel, double alpha, int nMax = 2,
                                               const SolverConfig& cfg = {});

/// (1/n) measured Arimoto information of X^n against the sandwiched Renyi
/// information at the tilted prior. alpha finite and > 1, nMax <= 2.
RegularizationTrace regularized_arimoto_trend(const CQState& ens, double alpha, int nMax = 2,
                                              const SolverConfig& cfg = {});

/// Tolerances of the recorded finite-n checks.
inline constexpr double kRegularizationTol = 1e-4;
inline constexpr double kTrendTol = 5e-3;

}  // namespace qleak
