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

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qleak/errors.hpp"
#include "qleak/ext_real.hpp"

namespace qleak {

/// Order parameter value standing for alpha = infinity.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// |alpha - 1| below this is evaluated on the alpha = 1 branch.
inline constexpr double kAlphaOneBand = 1e-4;

inline bool is_alpha_one(double alpha) { return std::abs(alpha - 1.0) < kAlphaOneBand; }

/// Finite distribution: nonnegative masses summing to 1 within 1e-10.
class Distribution {
public:
    Distribution(std::vector<std::string> labels, std::vector<double> mass);
    /// Labels "0", "1", ...
    explicit Distribution(std::vector<double> mass);

    static Distribution uniform(std::size_t n);

    std::size_t size() const { return mass_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& mass() const { return mass_; }
    double operator[](std::size_t i) const { return mass_[i]; }
    std::size_t support_size() const;

private:
    std::vector<std::string> labels_;
    std::vector<double> mass_;
};

double renyi_entropy(const Distribution& p, double alpha);
ExtReal renyi_divergence(const Distribution& p, const Distribution& q, double alpha);
Distribution tilted(const Distribution& p, double alpha);
double unconditional_alpha_gain(const Distribution& p, double alpha);

/// Unvalidated kernels shared with the solvers and oracles. `p` and `q` are
/// nonnegative weight vectors of equal length (not necessarily normalized).
namespace classical {

/// sum_i p_i^a q_i^(1-a) with 0^a = 0 and the support conventions of the divergence.
/// Returns +inf when a > 1 and some p_i > 0 has q_i = 0.
double quasi(std::span<const double> p, std::span<const double> q, double alpha);

/// Renyi divergence of two weight vectors, +inf on support violation.
double divergence(std::span<const double> p, std::span<const double> q, double alpha);

}  // namespace classical

}  // namespace qleak
