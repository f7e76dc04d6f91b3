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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qleak/probs.hpp"
#include "support/generators.hpp"

using namespace qleak;
using qleak::testing::Rng;

namespace {

const std::vector<double> kAlphas{0.0, 0.5, 1.0, 2.0, 5.0, kInf};

}  // namespace

TEST_CASE("distribution validation") {
    CHECK_NOTHROW(Distribution({0.25, 0.75}));
    CHECK_THROWS_AS(Distribution({0.5, 0.6}), InvalidDistribution);
    CHECK_THROWS_AS(Distribution({1.2, -0.2}), InvalidDistribution);
    CHECK_THROWS_AS(Distribution({"a", "a"}, {0.5, 0.5}), InvalidDistribution);
    CHECK_THROWS_AS(Distribution({"a"}, {0.5, 0.5}), InvalidDistribution);
    const Distribution d({0.2, 0.0, 0.8});
    CHECK(d.labels() == std::vector<std::string>{"0", "1", "2"});
    CHECK(d.support_size() == 2);
}

TEST_CASE("renyi entropy values") {
    for (double a : kAlphas) {
        CHECK(renyi_entropy(Distribution::uniform(5), a) == doctest::Approx(std::log(5.0)));
        CHECK(renyi_entropy(Distribution({0.0, 1.0, 0.0}), a) == doctest::Approx(0.0));
    }
    CHECK(renyi_entropy(Distribution({0.8, 0.2}), 2.0) == doctest::Approx(-std::log(0.68)));
    CHECK(renyi_entropy(Distribution({0.8, 0.2}), kInf) == doctest::Approx(-std::log(0.8)));
    CHECK(renyi_entropy(Distribution({0.8, 0.2, 0.0}), 0.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("renyi entropy is non-increasing in alpha") {
    Rng g(11);
    for (int t = 0; t < 200; ++t) {
        const Distribution p(qleak::testing::random_simplex(2 + t % 5, g));
        double prev = renyi_entropy(p, kAlphas.front());
        for (std::size_t k = 1; k < kAlphas.size(); ++k) {
            const double h = renyi_entropy(p, kAlphas[k]);
            CHECK(h <= prev + 1e-12);
            prev = h;
        }
    }
}

TEST_CASE("renyi divergence values") {
    const Distribution a({0.3, 0.7});
    for (double al : kAlphas) CHECK(renyi_divergence(a, a, al).value() == doctest::Approx(0.0));
    for (double al : kAlphas)
        CHECK(renyi_divergence(Distribution({1.0, 0.0}), Distribution::uniform(2), al).value() ==
              doctest::Approx(std::log(2.0)));
    CHECK(renyi_divergence(Distribution::uniform(2), Distribution({1.0, 0.0}), 2.0).is_infinite());
    CHECK(renyi_divergence(Distribution({0.7, 0.3}), Distribution::uniform(2), 1.0).value() ==
          doctest::Approx(0.7 * std::log(1.4) + 0.3 * std::log(0.6)));
    CHECK_THROWS_AS(renyi_divergence(a, Distribution::uniform(3), 2.0), LabelMismatch);
    CHECK_THROWS_AS(renyi_divergence(a, Distribution({"x", "y"}, {0.5, 0.5}), 2.0), LabelMismatch);
    CHECK_THROWS_AS(renyi_divergence(a, a, -1.0), DomainError);
}

TEST_CASE("renyi divergence is nonnegative and vanishes only at equality") {
    Rng g(12);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 2 + t % 4;
        const Distribution p(qleak::testing::random_simplex(m, g, 0.01));
        const Distribution q(qleak::testing::random_simplex(m, g, 0.01));
        for (double al : {0.5, 1.0, 2.0, kInf}) {
            CHECK(renyi_divergence(p, q, al).value() > 1e-10);
            CHECK(std::abs(renyi_divergence(p, p, al).value()) <= 1e-10);
        }
    }
}

TEST_CASE("tilted distributions") {
    Rng g(13);
    const Distribution u = Distribution::uniform(4);
    for (double a : {0.5, 2.0, 7.0}) CHECK(tilted(u, a).mass()[2] == doctest::Approx(0.25));
    const Distribution p(qleak::testing::random_simplex(3, g));
    for (std::size_t i = 0; i < 3; ++i) CHECK(tilted(p, 1.0).mass()[i] == doctest::Approx(p.mass()[i]));
    const Distribution t = tilted(Distribution({0.8, 0.2}), 2.0);
    CHECK(t.mass()[0] == doctest::Approx(0.64 / 0.68));
    CHECK(t.mass()[1] == doctest::Approx(0.04 / 0.68));
    for (int k = 0; k < 50; ++k) {
        const Distribution q(qleak::testing::random_simplex(2 + k % 4, g));
        const double a = 0.5 + 0.1 * k, b = 1.5 - 0.02 * k;
        const Distribution lhs = tilted(tilted(q, a), b), rhs = tilted(q, a * b);
        for (std::size_t i = 0; i < q.size(); ++i) CHECK(std::abs(lhs.mass()[i] - rhs.mass()[i]) <= 1e-12);
    }
}

TEST_CASE("unconditional alpha gain") {
    CHECK(unconditional_alpha_gain(Distribution({0.0, 1.0}), 2.0) == doctest::Approx(1.0));
    CHECK(unconditional_alpha_gain(Distribution::uniform(2), 2.0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(unconditional_alpha_gain(Distribution({0.3, 0.5, 0.2}), kInf) == doctest::Approx(0.5));
    CHECK_THROWS_AS(unconditional_alpha_gain(Distribution::uniform(2), 0.5), DomainError);
}

TEST_CASE("unconditional alpha gain matches a simplex grid search") {
    Rng g(14);
    for (int t = 0; t < 12; ++t) {
        const Distribution p(qleak::testing::random_simplex(2 + t % 2, g));
        const double a = t % 3 == 0 ? 1.5 : (t % 3 == 1 ? 2.0 : 4.0);
        const double e = (a - 1.0) / a;
        double best = 0.0;
        const int steps = 1000;
        if (p.size() == 2) {
            for (int i = 0; i <= steps; ++i) {
                const double q0 = static_cast<double>(i) / steps;
                best = std::max(best, p[0] * std::pow(q0, e) + p[1] * std::pow(1.0 - q0, e));
            }
        } else {
            for (int i = 0; i <= steps; ++i)
                for (int j = 0; i + j <= steps; ++j) {
                    const double q0 = static_cast<double>(i) / steps, q1 = static_cast<double>(j) / steps;
                    best = std::max(best, p[0] * std::pow(q0, e) + p[1] * std::pow(q1, e) +
                                              p[2] * std::pow(std::max(0.0, 1.0 - q0 - q1), e));
                }
        }
        const double v = unconditional_alpha_gain(p, a);
        CHECK(v >= best - 1e-12);
        CHECK(v <= best + 1e-4);
    }
}
