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

// Prior-dependent objectives of the capacity ascents.

#include <functional>
#include <vector>

#include "detail/state_opt.hpp"

namespace qleak::detail {

struct PriorEval {
    double value = 0.0;
    double upper = 0.0;  // max_x D_x(sigma*): an upper bound on the capacity
    /// Gradient along the simplex; only differences between entries are meaningful.
    std::vector<double> grad;
    ComplexMatrix sigma;
    SolveReport report;
};

using PriorFunction = std::function<PriorEval(const std::vector<double>& p, const ComplexMatrix& warm)>;

/// Renyi information of the prior p: min_sigma (1/(alpha-1)) log sum_x p_x exp((alpha-1) D_x(sigma)).
PriorFunction renyi_prior_function(BlockDivergences& blocks, double alpha, const SolverConfig& cfg);

/// Arimoto information of the prior p(t) with p^alpha proportional to t.
PriorFunction arimoto_prior_function(BlockDivergences& blocks, double alpha, const SolverConfig& cfg);

}  // namespace qleak::detail
