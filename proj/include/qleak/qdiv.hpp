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

#include <optional>

#include "qleak/ext_real.hpp"
#include "qleak/hermlin.hpp"
#include "qleak/solver.hpp"

namespace qleak {

struct DivergenceResult {
    ExtReal value;
    SolveReport report;
};

/// Closed-form sandwiched Renyi divergence; alpha = 1 is Umegaki and
/// alpha = inf the max-relative entropy. alpha = 0 is rejected.
DivergenceResult sandwiched(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha);
DivergenceResult umegaki(const DensityMatrix& rho, const HermitianOperator& sigma);
DivergenceResult max_relative_entropy(const DensityMatrix& rho, const HermitianOperator& sigma);

/// Supremum over measurements of the classical Renyi divergence of the outcome
/// distributions, computed through the variational formula over omega = exp(H).
DivergenceResult measured(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha,
                          const SolverConfig& cfg = {});

struct MeasuredSolution {
    ExtReal value;
    SolveReport report;
    /// Maximizing omega normalized so that Tr[sigma omega] = 1. Equals minus the
    /// gradient of the divergence with respect to sigma. Absent for infinite values
    /// and for rank-deficient sigma where no maximizer exists.
    std::optional<HermitianOperator> optimizer;
};

MeasuredSolution measured_with_optimizer(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha,
                                         const SolverConfig& cfg = {});

/// sum_y Tr[rho P_y]^alpha Tr[sigma P_y]^(1 - alpha) for a fixed measurement.
double measured_quasi(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha, const Povm& povm);

/// Objective maximized by `measured`, as a function of H with omega = exp(H):
///   alpha = 1:  Tr[rho H] - log Tr[sigma e^H]
///   otherwise:  alpha/(alpha-1) log Tr[rho e^{(alpha-1)H/alpha}] - log Tr[sigma e^H].
class MeasuredObjective {
public:
    MeasuredObjective(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha);

    double value(const HermitianOperator& h) const;
    /// Gradient with respect to the real inner product Re Tr[A B].
    HermitianOperator gradient(const HermitianOperator& h) const;

private:
    ComplexMatrix rho_;
    ComplexMatrix sigma_;
    double alpha_;
};

/// Gradient of sigma -> D*_alpha(rho || sigma) for full-rank sigma, finite alpha > 0.
HermitianOperator sandwiched_sigma_gradient(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha);

}  // namespace qleak
