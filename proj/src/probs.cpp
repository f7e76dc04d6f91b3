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

#include "qleak/probs.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace qleak {

namespace {

std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

void require_alpha(double alpha) {
    if (std::isnan(alpha) || alpha < 0.0) throw DomainError("alpha must be in [0, inf]");
}

}  // namespace

Distribution::Distribution(std::vector<std::string> labels, std::vector<double> mass)
    : labels_(std::move(labels)), mass_(std::move(mass)) {
    if (mass_.empty()) throw InvalidDistribution("distribution is empty");
    if (labels_.size() != mass_.size())
        throw InvalidDistribution("label count " + std::to_string(labels_.size()) + " differs from mass count " +
                                  std::to_string(mass_.size()));
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size())
        throw InvalidDistribution("labels are not unique");
    double sum = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        if (!std::isfinite(mass_[i])) throw NonFinite("mass of '" + labels_[i] + "' is not finite");
        if (mass_[i] < 0.0) throw InvalidDistribution("mass of '" + labels_[i] + "' is negative");
        sum += mass_[i];
    }
    if (std::abs(sum - 1.0) > 1e-10) throw InvalidDistribution("masses sum to " + std::to_string(sum));
}

Distribution::Distribution(std::vector<double> mass) : Distribution(index_labels(mass.size()), std::vector<double>(mass)) {}

Distribution Distribution::uniform(std::size_t n) {
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::size_t Distribution::support_size() const {
    return static_cast<std::size_t>(std::count_if(mass_.begin(), mass_.end(), [](double m) { return m > 0.0; }));
}

double renyi_entropy(const Distribution& p, double alpha) {
    require_alpha(alpha);
    const auto& m = p.mass();
    if (alpha == 0.0) return std::log(static_cast<double>(p.support_size()));
    if (std::isinf(alpha)) return -std::log(*std::max_element(m.begin(), m.end()));
    if (is_alpha_one(alpha)) {
        double h = 0.0;
        for (double x : m)
            if (x > 0.0) h -= x * std::log(x);
        return h;
    }
    double s = 0.0;
    for (double x : m)
        if (x > 0.0) s += std::pow(x, alpha);
    return std::log(s) / (1.0 - alpha);
}

ExtReal renyi_divergence(const Distribution& p, const Distribution& q, double alpha) {
    require_alpha(alpha);
    if (p.labels() != q.labels()) throw LabelMismatch("distributions are over different label sets");
    return ExtReal(classical::divergence(p.mass(), q.mass(), alpha));
}

Distribution tilted(const Distribution& p, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("tilting order must be finite and positive");
    const auto& m = p.mass();
    double top = *std::max_element(m.begin(), m.end());
    std::vector<double> out(m.size(), 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] > 0.0) out[i] = std::pow(m[i] / top, alpha);
        s += out[i];
    }
    for (double& x : out) x /= s;
    return Distribution(p.labels(), std::move(out));
}

double unconditional_alpha_gain(const Distribution& p, double alpha) {
    if (std::isnan(alpha) || alpha < 1.0) throw DomainError("alpha-gain defined for alpha in [1, inf]");
    const auto& m = p.mass();
    if (std::isinf(alpha)) return *std::max_element(m.begin(), m.end());
    if (is_alpha_one(alpha)) return 1.0;
    double s = 0.0;
    for (double x : m)
        if (x > 0.0) s += std::pow(x, alpha);
    return std::pow(s, 1.0 / alpha);
}

namespace classical {

double quasi(std::span<const double> p, std::span<const double> q, double alpha) {
    const double inf = std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) {
            if (alpha > 1.0) return inf;
            continue;
        }
        s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
    }
    return s;
}

double divergence(std::span<const double> p, std::span<const double> q, double alpha) {
    if (p.size() != q.size()) throw DimensionMismatch("classical divergence: length mismatch");
    const double inf = std::numeric_limits<double>::infinity();
    if (alpha == 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > 0.0) s += q[i];
        return s > 0.0 ? -std::log(s) : inf;
    }
    if (std::isinf(alpha)) {
        double best = -inf;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] <= 0.0) continue;
            if (q[i] <= 0.0) return inf;
            best = std::max(best, std::log(p[i] / q[i]));
        }
        return best;
    }
    if (is_alpha_one(alpha)) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] <= 0.0) continue;
            if (q[i] <= 0.0) return inf;
            s += p[i] * std::log(p[i] / q[i]);
        }
        return s;
    }
    const double s = quasi(p, q, alpha);
    if (std::isinf(s)) return inf;
    if (s <= 0.0) return inf;
    return std::log(s) / (alpha - 1.0);
}

}  // namespace classical

}  // namespace qleak
