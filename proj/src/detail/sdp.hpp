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

// min Tr Y subject to Y >= A_x for every x, by a primal log-barrier path.

#include <vector>

#include "detail/spectral.hpp"

namespace qleak::detail {

struct DominatingTrace {
    double value = 0.0;              // Tr Y
    ComplexMatrix y;
    std::vector<ComplexMatrix> dual;  // measurement built from the barrier dual with the best lower bound
    double gap = 0.0;                 // Tr Y minus the best measurement value found along the path
    int iterations = 0;
    bool converged = false;
};

DominatingTrace min_trace_dominating(const std::vector<ComplexMatrix>& a);

}  // namespace qleak::detail
