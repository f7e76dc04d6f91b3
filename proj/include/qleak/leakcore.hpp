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
#include <span>
#include <string>
#include <vector>

#include "qleak/ext_real.hpp"
#include "qleak/hermlin.hpp"
#include "qleak/probs.hpp"
#include "qleak/solver.hpp"

namespace qleak {

/// Prior over a finite alphabet and one state per symbol. Also serves as the
/// channel x -> rho^x; channel-level operations use the symbols of positive prior mass.
class CQState {
public:
    CQState(Distribution prior, std::vector<DensityMatrix> states);

    const Distribution& prior() const { return prior_; }
    const std::vector<DensityMatrix>& states() const { return states_; }
    const std::vector<std::string>& labels() const { return prior_.labels(); }
    std::size_t size() const { return states_.size(); }
    int dim() const { return states_.front().dim(); }
    const DensityMatrix& state(const std::string& label) const;

    CQState with_prior(Distribution prior) const;
    /// Same prior, every state sent through the channel with the given Kraus operators.
    CQState apply_channel(std::span<const ComplexMatrix> kraus) const;

private:
    Distribution prior_;
    std::vector<DensityMatrix> states_;
};

/// x -> rho^x_1 (x) rho^x_2 for two mechanisms over the same prior.
CQState product_mechanism(const CQState& a, const CQState& b);

/// Channel on X^n with states rho^{x_1} (x) ... (x) rho^{x_n} and the product prior.
CQState tensor_power_channel(const CQState& channel, int n);

struct LeakageResult {
    ExtReal value;
    double alpha = 0.0;
    SolveReport report;
    std::optional<DensityMatrix> optimizerState;
    std::optional<Distribution> optimizerPrior;
    /// Difference between the value and an independent expression of the same quantity.
    std::optional<double> crossCheckGap;
};

/// -min_sigma D^M_alpha(rho_XB || 1 (x) sigma).
LeakageResult measured_conditional_entropy(const CQState& ens, double alpha, const SolverConfig& cfg = {});
/// exp(((1 - alpha)/alpha) H^M_alpha(X|B)), alpha in [1, inf].
LeakageResult max_expected_alpha_gain(const CQState& ens, double alpha, const SolverConfig& cfg = {});
LeakageResult min_expected_alpha_loss(const CQState& ens, double alpha, const SolverConfig& cfg = {});
/// sum_x p(x) Tr[rho^x (Pi^x)^((alpha-1)/alpha)]; the POVM is indexed like the alphabet.
double expected_alpha_gain_of_povm(const CQState& ens, const Povm& povm, double alpha);
LeakageResult alpha_leakage(const CQState& ens, double alpha, const SolverConfig& cfg = {});

LeakageResult measured_renyi_information(const CQState& ens, double alpha, const SolverConfig& cfg = {});
LeakageResult measured_arimoto_information(const CQState& ens, double alpha, const SolverConfig& cfg = {});

LeakageResult divergence_radius(const CQState& channel, double alpha, const SolverConfig& cfg = {});
LeakageResult measured_capacity(const CQState& channel, double alpha, const SolverConfig& cfg = {});
LeakageResult arimoto_capacity(const CQState& channel, double alpha, const SolverConfig& cfg = {});

struct CapacityTriple {
    LeakageResult capacity;
    LeakageResult arimotoCapacity;
    LeakageResult radius;
    double capacityRadiusGap = 0.0;   // |capacity - radius|
    double capacityArimotoGap = 0.0;  // |capacity - arimoto capacity|
    bool agree() const { return capacityRadiusGap <= kCapacityTol && capacityArimotoGap <= kCapacityTol; }
};

CapacityTriple measured_capacity_triple(const CQState& channel, double alpha, const SolverConfig& cfg = {});

LeakageResult maximal_alpha_leakage(const CQState& ens, double alpha, const SolverConfig& cfg = {});

/// L^max(X->B1) + L^max(X->B2) - L^max(X->B1B2).
double composition_gap(const CQState& ensAB, const CQState& ens1, const CQState& ens2, double alpha,
                       const SolverConfig& cfg = {});

LeakageResult sandwiched_conditional_entropy(const CQState& ens, double alpha, const SolverConfig& cfg = {});
LeakageResult sandwiched_information(const CQState& ens, double alpha, const SolverConfig& cfg = {});
LeakageResult sandwiched_arimoto_information(const CQState& ens, double alpha, const SolverConfig& cfg = {});
/// Sandwiched capacity, Arimoto capacity and divergence radius.
CapacityTriple sandwiched_capacity_radius(const CQState& channel, double alpha, const SolverConfig& cfg = {});

}  // namespace qleak
