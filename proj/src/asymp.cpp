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

#include "qleak/asymp.hpp"

#include <cmath>
#include <string>

#include "qleak/qdiv.hpp"

namespace qleak {

namespace {

constexpr int kMaxPowerDim = 64;

void require_power(int n, int nMax, const char* what) {
    if (n < 1 || n > nMax)
        throw DomainError(std::string(what) + ": n must be in [1, " + std::to_string(nMax) + "]");
}

void finish(RegularizationTrace& t, double tol) {
    for (double v : t.perLetterValues)
        if (!(v <= t.limitReference + tol)) t.withinReference = false;
    if (t.perLetterValues.size() >= 2 && !(t.perLetterValues[1] >= t.perLetterValues[0] - tol))
        t.superAdditive = false;
}

void require_binary_qubit(const CQState& ens, const char* what) {
    if (ens.size() != 2) throw ArityMismatch(std::string(what) + " needs a binary alphabet");
    if (ens.dim() != 2) throw DimensionNot2(std::string(what) + " needs qubit outputs");
}

}  // namespace

PowerPair tensor_power_pair(const DensityMatrix& rho, const HermitianOperator& sigma, int n) {
    require_power(n, 3, "tensor_power_pair");
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("tensor_power_pair: rho and sigma differ in dimension");
    if (std::pow(static_cast<double>(rho.dim()), n) > kMaxPowerDim)
        throw DimensionTooLarge("tensor power of dimension " + std::to_string(rho.dim()) + " to n = " +
                                std::to_string(n) + " exceeds 64");
    DensityMatrix r = rho;
    HermitianOperator s = sigma;
    for (int k = 1; k < n; ++k) {
        r = tensor(r, rho);
        s = tensor(s, sigma);
    }
    return {std::move(r), std::move(s)};
}

PinchingBracket pinching_bracket(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha) {
    if (std::isnan(alpha) || alpha < 0.0) throw DomainError("alpha must be in [0, inf]");
    PinchingBracket b;
    b.upper = sandwiched(rho, sigma, alpha).value.value();
    b.lower = sandwiched(pinch(rho, sigma), sigma, alpha).value.value();
    const double c = alpha <= 2.0 ? 1.0 : 2.0;
    b.spectralLower = b.upper - c * std::log(static_cast<double>(spectrum_count(sigma)));
    return b;
}

RegularizationTrace regularized_divergence_trace(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha,
                                                 int nMax, const SolverConfig& cfg) {
    if (std::isnan(alpha) || alpha < 0.5) throw DomainError("regularized_divergence_trace: alpha must be >= 1/2");
    require_power(nMax, 3, "regularized_divergence_trace");
    RegularizationTrace t;
    t.limitReference = sandwiched(rho, sigma, alpha).value.value();
    t.report.converged = true;
    for (int n = 1; n <= nMax; ++n) {
        PowerPair pp = tensor_power_pair(rho, sigma, n);
        DivergenceResult m = measured(pp.rho, pp.sigma, alpha, cfg);
        t.report.absorb(m.report);
        t.ns.push_back(n);
        t.perLetterValues.push_back(m.value.value() / n);
        PinchingBracket b = pinching_bracket(pp.rho, pp.sigma, alpha);
        b.lower /= n;
        b.spectralLower /= n;
        b.upper /= n;
        t.bounds.push_back(b);
    }
    finish(t, kRegularizationTol);
    return t;
}

RegularizationTrace regularized_capacity_trend(const CQState& channel, double alpha, int nMax,
                                               const SolverConfig& cfg) {
    if (std::isnan(alpha) || alpha <= 1.0) throw DomainError("regularized_capacity_trend: alpha must be > 1");
    require_power(nMax, 2, "regularized_capacity_trend");
    require_binary_qubit(channel, "regularized_capacity_trend");
    RegularizationTrace t;
    t.limitReference = sandwiched_capacity_radius(channel, alpha, cfg).capacity.value.value();
    t.report.converged = true;
    for (int n = 1; n <= nMax; ++n) {
        LeakageResult c = measured_capacity(tensor_power_channel(channel, n), alpha, cfg);
        t.report.absorb(c.report);
        t.ns.push_back(n);
        t.perLetterValues.push_back(c.value.value() / n);
    }
    finish(t, kTrendTol);
    return t;
}

RegularizationTrace regularized_arimoto_trend(const CQState& ens, double alpha, int nMax, const SolverConfig& cfg) {
    if (std::isnan(alpha) || alpha <= 1.0 || std::isinf(alpha))
        throw DomainError("regularized_arimoto_trend: alpha must be finite and > 1");
    require_power(nMax, 2, "regularized_arimoto_trend");
    require_binary_qubit(ens, "regularized_arimoto_trend");
    RegularizationTrace t;
    t.limitReference = sandwiched_information(ens.with_prior(tilted(ens.prior(), alpha)), alpha, cfg).value.value();
    t.report.converged = true;
    for (int n = 1; n <= nMax; ++n) {
        LeakageResult a = measured_arimoto_information(tensor_power_channel(ens, n), alpha, cfg);
        t.report.absorb(a.report);
        t.ns.push_back(n);
        t.perLetterValues.push_back(a.value.value() / n);
    }
    finish(t, kTrendTol);
    return t;
}

}  // namespace qleak
