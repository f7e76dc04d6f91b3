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

#include "qleak/asymp.hpp"
#include "qleak/oracle.hpp"
#include "qleak/qdiv.hpp"
#include "support/generators.hpp"

using namespace qleak;
using qleak::testing::Rng;

namespace {

DensityMatrix basis_state(int i) { return DensityMatrix::diagonal(i == 0 ? std::vector<double>{1, 0} : std::vector<double>{0, 1}); }

}  // namespace

TEST_CASE("tensor power pairs") {
    const DensityMatrix r = DensityMatrix::diagonal(std::vector<double>{0.3, 0.7});
    const PowerPair one = tensor_power_pair(r, r.op(), 1);
    CHECK((one.rho.matrix() - r.matrix()).cwiseAbs().maxCoeff() == 0.0);
    const PowerPair two = tensor_power_pair(r, r.op(), 2);
    const std::vector<double> expect{0.09, 0.21, 0.21, 0.49};
    for (int i = 0; i < 4; ++i) CHECK(two.rho.matrix()(i, i).real() == doctest::Approx(expect[i]));
    Rng g(61);
    const DensityMatrix s = qleak::testing::ginibre_state(3, g);
    CHECK(tensor_power_pair(s, s.op(), 3).rho.op().trace() == doctest::Approx(1.0));
    const DensityMatrix big = qleak::testing::ginibre_state(5, g);
    CHECK_THROWS_AS(tensor_power_pair(big, big.op(), 3), DimensionTooLarge);
    CHECK_THROWS_AS(tensor_power_pair(s, s.op(), 4), DomainError);
}

TEST_CASE("divergence traces on special pairs") {
    const DensityMatrix a = DensityMatrix::diagonal(std::vector<double>{0.8, 0.2});
    const DensityMatrix b = DensityMatrix::diagonal(std::vector<double>{0.4, 0.6});
    for (double al : {0.75, 2.0}) {
        const RegularizationTrace t = regularized_divergence_trace(a, b.op(), al);
        const double c = classical::divergence(std::vector<double>{0.8, 0.2}, std::vector<double>{0.4, 0.6}, al);
        for (double v : t.perLetterValues) CHECK(v == doctest::Approx(c).epsilon(1e-6));
        const RegularizationTrace z = regularized_divergence_trace(a, a.op(), al);
        for (double v : z.perLetterValues) CHECK(std::abs(v) < 1e-8);
    }
    Rng g(62);
    const DensityMatrix r = qleak::testing::ginibre_state(2, g), s = qleak::testing::ginibre_state(2, g);
    const RegularizationTrace h = regularized_divergence_trace(r, s.op(), 0.5);
    for (double v : h.perLetterValues) CHECK(v == doctest::Approx(h.perLetterValues.front()).epsilon(1e-7));
    CHECK_THROWS_AS(regularized_divergence_trace(r, s.op(), 0.3), DomainError);
}

TEST_CASE("divergence traces stay below the sandwiched limit and are super-additive") {
    Rng g(63);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix r = qleak::testing::ginibre_state(2, g), s = qleak::testing::ginibre_state(2, g);
        for (double al : {0.75, 2.0}) {
            const RegularizationTrace tr = regularized_divergence_trace(r, s.op(), al);
            CHECK(tr.withinReference);
            CHECK(tr.superAdditive);
            for (std::size_t k = 0; k < tr.perLetterValues.size(); ++k) {
                CHECK(tr.perLetterValues[k] <= tr.limitReference + 1e-4);
                CHECK(tr.bounds[k].lower <= tr.perLetterValues[k] + 1e-5);
                CHECK(tr.bounds[k].spectralLower <= tr.perLetterValues[k] + 1e-5);
                CHECK(tr.perLetterValues[k] <= tr.bounds[k].upper + 1e-5);
            }
        }
    }
}

TEST_CASE("pinching bracket") {
    const DensityMatrix a = DensityMatrix::diagonal(std::vector<double>{0.8, 0.2});
    const DensityMatrix b = DensityMatrix::diagonal(std::vector<double>{0.4, 0.6});
    const PinchingBracket c = pinching_bracket(a, b.op(), 2.0);
    CHECK(c.lower == doctest::Approx(c.upper));
    Rng g(64);
    const DensityMatrix r = qleak::testing::ginibre_state(3, g);
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
    const PinchingBracket m = pinching_bracket(r, mixed.op(), 3.0);
    CHECK(m.spectralLower == doctest::Approx(m.upper));
    CHECK(measured(r, mixed.op(), 3.0).value.value() == doctest::Approx(m.upper).epsilon(1e-6));
    const PinchingBracket z = pinching_bracket(basis_state(0), basis_state(0).op(), 2.0);
    CHECK(std::abs(z.lower) < 1e-12);
    CHECK(std::abs(z.upper) < 1e-12);
    for (int t = 0; t < 100; ++t) {
        const DensityMatrix x = qleak::testing::ginibre_state(2, g), y = qleak::testing::ginibre_state(2, g);
        for (double al : {0.75, 1.0, 2.0, 3.0}) {
            const PinchingBracket br = pinching_bracket(x, y.op(), al);
            const double v = measured(x, y.op(), al).value.value();
            CHECK(br.lower - 1e-5 <= v);
            CHECK(br.spectralLower - 1e-5 <= v);
            CHECK(v <= br.upper + 1e-5);
        }
    }
}

TEST_CASE("capacity trend on special channels") {
    const CQState orth(Distribution::uniform(2), {basis_state(0), basis_state(1)});
    const RegularizationTrace t = regularized_capacity_trend(orth, 2.0);
    CHECK(t.limitReference == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    for (double v : t.perLetterValues) CHECK(v == doctest::Approx(std::log(2.0)).epsilon(1e-6));

    Rng g(65);
    const DensityMatrix tau = qleak::testing::ginibre_state(2, g);
    const RegularizationTrace z = regularized_capacity_trend(CQState(Distribution::uniform(2), {tau, tau}), 3.0);
    for (double v : z.perLetterValues) CHECK(std::abs(v) < 1e-6);

    const CQState cl(Distribution::uniform(2), {DensityMatrix::diagonal(std::vector<double>{0.9, 0.1}),
                                                DensityMatrix::diagonal(std::vector<double>{0.2, 0.8})});
    const double ref = oracle::classical_exhaustive(cl, oracle::Quantity::Capacity, 2.0);
    const RegularizationTrace c = regularized_capacity_trend(cl, 2.0);
    for (double v : c.perLetterValues) CHECK(std::abs(v - ref) <= 2e-3);
    CHECK(c.withinReference);
    CHECK_THROWS_AS(regularized_capacity_trend(cl, 1.0), DomainError);
}

TEST_CASE("capacity and Arimoto trends on random channels") {
    Rng g(66);
    for (int t = 0; t < 2; ++t) {
        const CQState ch = qleak::testing::random_ensemble(2, 2, g);
        const RegularizationTrace c = regularized_capacity_trend(ch, 2.0);
        CHECK(c.withinReference);
        const RegularizationTrace a = regularized_arimoto_trend(ch, 2.0);
        CHECK(a.withinReference);
        for (double v : a.perLetterValues) CHECK(v <= a.limitReference + kTrendTol);
    }
}
