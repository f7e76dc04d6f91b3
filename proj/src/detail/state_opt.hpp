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

// Minimization of convex functionals over density matrices, and the per-state
// divergence evaluators they are built from.

#include <functional>
#include <vector>

#include "detail/divergence.hpp"

namespace qleak::detail {

/// Phi(sigma), writing dPhi/dsigma into grad when non-null. sigma is positive definite.
using StateFunctional = std::function<double(const ComplexMatrix& sigma, ComplexMatrix* grad)>;

struct StateOptResult {
    ComplexMatrix sigma;
    double value = 0.0;
    double gap = 0.0;  // Frank-Wolfe duality gap Tr[G sigma] - lambda_min(G) at the returned point
    SolveReport report;
};

/// Mirror-descent minimization in sigma = exp(K) / Tr exp(K) with quasi-Newton
/// steps on K. Stops when the Frank-Wolfe gap drops below gapTol.
StateOptResult minimize_state(const StateFunctional& phi, const ComplexMatrix& sigma0, const SolverConfig& cfg,
                              double gapTol, int maxIter);

enum class Flavor { Measured, Sandwiched };

/// D_x(sigma) and dD_x/dsigma for a fixed family of states, with warm starts
/// carried across calls for the measured flavor.
class BlockDivergences {
public:
    BlockDivergences(std::vector<ComplexMatrix> states, double alpha, Flavor flavor, const SolverConfig& cfg);

    void eval(const ComplexMatrix& sigma, std::vector<double>& d, std::vector<ComplexMatrix>* grads);

    std::size_t size() const { return states_.size(); }
    const std::vector<ComplexMatrix>& states() const { return states_; }
    double alpha() const { return alpha_; }
    const SolveReport& report() const { return report_; }
    void reset_report() { report_ = SolveReport{}; }

private:
    std::vector<ComplexMatrix> states_;
    double alpha_;
    Flavor flavor_;
    SolverConfig cfg_;
    std::vector<ComplexMatrix> warm_;
    std::vector<bool> haveWarm_;
    SolveReport report_;
};

/// tau * log sum_x exp(D_x / tau + lw_x) and its softmax weights. tau may be negative.
double log_sum_exp(const std::vector<double>& d, const std::vector<double>& lw, double tau, std::vector<double>* pi);

struct WeightedMin {
    double value = 0.0;
    ComplexMatrix sigma;
    std::vector<double> d;  // D_x at the minimizer
    double gap = 0.0;
    SolveReport report;
};

/// min over sigma of
///   alpha = 1 : sum_x w_x D_x(sigma)
///   otherwise : (1/(alpha-1)) log sum_x w_x exp((alpha-1) D_x(sigma)),
/// with lw = log w. Warm-started from sigma0.
WeightedMin weighted_min(BlockDivergences& blocks, const std::vector<double>& lw, const ComplexMatrix& sigma0,
                         const SolverConfig& cfg);

/// Largest Frank-Wolfe gap of the final smoothed stage still reported as converged.
inline constexpr double kRadiusGapAccept = 1e-6;

/// min over sigma of max_x D_x(sigma) through the log-sum-exp temperature schedule.
WeightedMin smoothed_radius(BlockDivergences& blocks, const ComplexMatrix& sigma0, const SolverConfig& cfg,
                            double tauMin);

/// min over sigma of max_x D_max(rho_x || sigma), smoothing the maximum over x and
/// the largest eigenvalue of rho_x^{1/2} sigma^{-1} rho_x^{1/2} at the same temperature.
WeightedMin smoothed_dmax_radius(const std::vector<ComplexMatrix>& states, const ComplexMatrix& sigma0,
                                 const SolverConfig& cfg, double tauMin);

/// Outer tolerance on Frank-Wolfe gaps of nested problems.
inline double state_gap_tol(const SolverConfig& cfg) { return std::max(10.0 * cfg.tol, 1e-13); }
inline int state_max_iter(const SolverConfig& cfg) { return std::min(cfg.maxIter, 1000); }

/// Orthonormal basis of the joint support of a family of PSD matrices.
ComplexMatrix joint_support(const std::vector<ComplexMatrix>& states);

}  // namespace qleak::detail
