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

// Brute-force reference values at small dimension.

#include "qleak/hermlin.hpp"
#include "qleak/leakcore.hpp"
#include "qleak/probs.hpp"
#include "qleak/solver.hpp"

namespace qleak::oracle {

/// Optimal success probability for discriminating two states: (1 + ||p0 rho0 - p1 rho1||_1) / 2.
double helstrom_guess(const Distribution& p, const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Rank-one projective qubit measurement {|v><v|, |v'><v'|} with Bloch angles (theta, phi) for v.
Povm bloch_measurement(double theta, double phi);

/// Largest classical divergence over a (theta, phi) grid of qubit projective
/// measurements plus the eigenbases of rho and sigma. A lower bound on the measured
/// divergence. With `refine`, a local pattern search continues from the best grid point.
double grid_measured_divergence(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha,
                                int resolution, bool refine = false);

/// min over a Bloch-ball grid of sigma (plus the barycenter) of max_x D^M(rho^x || sigma).
/// An upper bound on the divergence radius.
double grid_radius(const CQState& channel, double alpha, int resolution, const SolverConfig& cfg = {});

/// Best expected alpha-gain over measurements diagonal in a gridded qubit basis
/// (with the optimal outcome assignment per basis), refined locally around the best
/// grid point. Every candidate is an explicit measurement, so this is a lower bound.
double grid_alpha_gain(const CQState& ens, double alpha, int resolution);

enum class Quantity { Divergence, ConditionalEntropy, ArimotoInformation, RenyiInformation, Capacity };

/// Purely classical evaluation in the common eigenbasis of a commuting ensemble.
/// Divergence compares the first two states.
double classical_exhaustive(const CQState& ens, Quantity quantity, double alpha);

}  // namespace qleak::oracle
