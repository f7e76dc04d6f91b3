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

// Divergence kernels on raw matrices, shared by qdiv and the ensemble solvers.

#include <limits>

#include "detail/spectral.hpp"
#include "qleak/solver.hpp"

namespace qleak::detail {

inline constexpr double kInfD = std::numeric_limits<double>::infinity();

/// Weight of rho outside supp(sigma) above which the support test fails.
inline constexpr double kSupportLeak = 1e-12;

/// Commutator norm under which a pair takes the classical path.
inline constexpr double kCommuteTol = 1e-10;

struct InnerSolve {
    double value = 0.0;           // divergence in nats, may be +inf
    bool hasOmega = false;        // omega and h are meaningful
    ComplexMatrix omega;          // maximizer with Tr[sigma omega] = 1
    ComplexMatrix h;              // log omega, for warm starts
    SolveReport report;
};

/// Measured divergence of a unit-trace rho against PSD sigma. Without `warm`,
/// alpha != 1 runs cfg.restarts starts; with `warm` (same dimension as sigma,
/// typically the log-optimizer of a nearby problem) the restarts are fallbacks.
InnerSolve solve_measured(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha,
                          const SolverConfig& cfg, const ComplexMatrix* warm = nullptr);

double dmax_value(const ComplexMatrix& rho, const ComplexMatrix& sigma, ComplexMatrix* omega = nullptr);
double umegaki_value(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double sandwiched_value(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha);

/// D*_alpha(rho || sigma) and its sigma-gradient for positive definite sigma.
double sandwiched_with_gradient(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha,
                                ComplexMatrix* grad);

/// Weight of rho on the kernel of sigma.
double kernel_weight(const ComplexMatrix& rho, const Eig& sigma);

/// mt19937_64-seeded random Hermitian matrix with standard normal entries.
ComplexMatrix random_hermitian(Eigen::Index d, std::uint64_t seed);

}  // namespace qleak::detail
