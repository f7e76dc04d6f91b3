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
#include <limits>

#include "qleak/leakcore.hpp"
#include "qleak/oracle.hpp"
#include "qleak/qdiv.hpp"
#include "support/generators.hpp"

using namespace qleak;
using qleak::testing::Rng;

namespace {

DensityMatrix basis_state(int d, int i) {
    std::vector<double> v(d, 0.0);
    v[i] = 1.0;
    return DensityMatrix::diagonal(v);
}

DensityMatrix ket_plus() {
    ComplexVector v(2);
    v << 1.0, 1.0;
    return DensityMatrix::pure(v / std::sqrt(2.0));
}

}  // namespace

TEST_CASE("helstrom values") {
    CHECK(oracle::helstrom_guess(Distribution::uniform(2), basis_state(2, 0), basis_state(2, 1)) == doctest::Approx(1.0));
    Rng g(71);
    const DensityMatrix r = qleak::testing::ginibre_state(2, g);
    CHECK(oracle::helstrom_guess(Distribution({0.3, 0.7}), r, r) == doctest::Approx(0.7));
    CHECK(oracle::helstrom_guess(Distribution::uniform(2), basis_state(2, 0), ket_plus()) ==
          doctest::Approx(0.5 + std::sqrt(2.0) / 4.0));
}

TEST_CASE("helstrom matches the guessing solver") {
    Rng g(72);
    for (int t = 0; t < 100; ++t) {
        const CQState e = qleak::testing::random_ensemble(2, 2, g, 0.05);
        const double h = oracle::helstrom_guess(e.prior(), e.states()[0], e.states()[1]);
        CHECK(std::abs(max_expected_alpha_gain(e, kInf).value.value() - h) <= 1e-6);
    }
}

TEST_CASE("grid divergence values") {
    const DensityMatrix a = DensityMatrix::diagonal(std::vector<double>{0.7, 0.3});
    const DensityMatrix b = DensityMatrix::diagonal(std::vector<double>{0.5, 0.5});
    CHECK(oracle::grid_measured_divergence(a, b.op(), 2.0, 64) == doctest::Approx(std::log(1.16)));
    CHECK(std::abs(oracle::grid_measured_divergence(a, a.op(), 2.0, 64)) < 1e-14);
    Rng g(73);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix r = qleak::testing::ginibre_state(2, g), s = qleak::testing::ginibre_state(2, g);
        CHECK(std::abs(oracle::grid_measured_divergence(r, s.op(), 0.5, 256) - sandwiched(r, s.op(), 0.5).value.value()) <=
              2e-3);
    }
    CHECK_THROWS_AS(oracle::grid_measured_divergence(DensityMatrix::maximally_mixed(3),
                                                     DensityMatrix::maximally_mixed(3).op(), 2.0, 64),
                    DimensionNot2);
    CHECK_THROWS_AS(oracle::grid_measured_divergence(a, b.op(), 2.0, 32), DomainError);
}

TEST_CASE("grid divergence lower-bounds the solver and grows with resolution") {
    Rng g(74);
    for (int t = 0; t < 20; ++t) {
        const DensityMatrix r = qleak::testing::ginibre_state(2, g), s = qleak::testing::ginibre_state(2, g);
        for (double a : {0.5, 0.75, 2.0, 3.0}) {
            const double m = measured(r, s.op(), a).value.value();
            double prev = -1.0;
            for (int res : {64, 128, 256}) {
                const double v = oracle::grid_measured_divergence(r, s.op(), a, res);
                CHECK(v >= prev - 1e-15);
                CHECK(v <= m + 1e-9);
                prev = v;
            }
            const double refined = oracle::grid_measured_divergence(r, s.op(), a, 64, true);
            CHECK(refined >= prev - 1e-12);
            CHECK(refined <= m + 1e-9);
            CHECK(refined >= m - 2e-3);
        }
    }
}

TEST_CASE("grid radius") {
    Rng g(75);
    const DensityMatrix r = qleak::testing::ginibre_state(2, g);
    CHECK(std::abs(oracle::grid_radius(CQState(Distribution({1.0}), {r}), 2.0, 4)) < 1e-9);
    const CQState orth(Distribution::uniform(2), {basis_state(2, 0), basis_state(2, 1)});
    CHECK(oracle::grid_radius(orth, 2.0, 4) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    const CQState dup(Distribution::uniform(3), {r, r, basis_state(2, 1)});
    const CQState dedup(Distribution::uniform(2), {r, basis_state(2, 1)});
    CHECK(oracle::grid_radius(dup, kInf, 8) == doctest::Approx(oracle::grid_radius(dedup, kInf, 8)));
    CHECK_THROWS_AS(oracle::grid_radius(CQState(Distribution({1.0}), {DensityMatrix::maximally_mixed(3)}), 2.0, 4),
                    DimensionNot2);
}

TEST_CASE("grid radius upper-bounds the solver and shrinks with resolution") {
    Rng g(76);
    for (int t = 0; t < 4; ++t) {
        const CQState ch = qleak::testing::random_ensemble(2, 2, g);
        for (double a : {2.0, kInf}) {
            const double rad = divergence_radius(ch, a).value.value();
            double prev = std::numeric_limits<double>::infinity();
            for (int res : {2, 4, 8}) {
                const double v = oracle::grid_radius(ch, a, res);
                CHECK(v <= prev + 1e-15);
                CHECK(v >= rad - 1e-9);
                prev = v;
            }
        }
    }
}

TEST_CASE("grid gain lower-bounds the solver") {
    Rng g(77);
    for (int t = 0; t < 5; ++t) {
        const CQState e = qleak::testing::random_ensemble(2, 2, g);
        for (double a : {1.5, 2.0, 4.0}) {
            const double grid = oracle::grid_alpha_gain(e, a, 64);
            const double s = max_expected_alpha_gain(e, a).value.value();
            CHECK(s >= grid - 1e-6);
            CHECK(s <= grid + 2e-3);
        }
    }
}

TEST_CASE("classical exhaustive values") {
    // binary symmetric channel with crossover 0.1, uniform input
    const CQState bsc(Distribution::uniform(2), {DensityMatrix::diagonal(std::vector<double>{0.9, 0.1}),
                                                 DensityMatrix::diagonal(std::vector<double>{0.1, 0.9})});
    const double h = -0.9 * std::log(0.9) - 0.1 * std::log(0.1);
    CHECK(oracle::classical_exhaustive(bsc, oracle::Quantity::ArimotoInformation, 1.0) == doctest::Approx(std::log(2.0) - h));
    CHECK(oracle::classical_exhaustive(bsc, oracle::Quantity::RenyiInformation, 1.0) == doctest::Approx(std::log(2.0) - h));
    CHECK(oracle::classical_exhaustive(bsc, oracle::Quantity::Capacity, 1.0) == doctest::Approx(std::log(2.0) - h));

    const DensityMatrix tau = DensityMatrix::diagonal(std::vector<double>{0.6, 0.4});
    const CQState same(Distribution({0.3, 0.7}), {tau, tau});
    for (auto q : {oracle::Quantity::Divergence, oracle::Quantity::ArimotoInformation, oracle::Quantity::RenyiInformation,
                   oracle::Quantity::Capacity})
        CHECK(std::abs(oracle::classical_exhaustive(same, q, 2.0)) < 1e-9);

    std::vector<DensityMatrix> det;
    for (int i = 0; i < 3; ++i) det.push_back(basis_state(3, i));
    const CQState noiseless(Distribution({0.5, 0.3, 0.2}), det);
    for (double a : {0.5, 1.0, 2.0, kInf})
        CHECK(oracle::classical_exhaustive(noiseless, oracle::Quantity::Capacity, a) == doctest::Approx(std::log(3.0)));

    const CQState quantum(Distribution::uniform(2), {basis_state(2, 0), ket_plus()});
    CHECK_THROWS_AS(oracle::classical_exhaustive(quantum, oracle::Quantity::Capacity, 2.0), NotCommuting);
    CHECK_THROWS_AS(oracle::classical_exhaustive(bsc, oracle::Quantity::Capacity, 0.0), DomainError);
}

TEST_CASE("classical exhaustive agrees with the quantum solvers on commuting inputs") {
    Rng g(78);
    for (int t = 0; t < 6; ++t) {
        const int d = 2 + t % 3;
        const std::size_t m = 2 + t % 2;
        const CQState e(Distribution(qleak::testing::random_simplex(m, g, 0.1)), qleak::testing::commuting_states(d, m, g));
        for (double a : {0.5, 2.0, kInf}) {
            CHECK(std::abs(measured(e.states()[0], e.states()[1].op(), a).value.value() -
                           oracle::classical_exhaustive(e, oracle::Quantity::Divergence, a)) <= 1e-4);
            CHECK(std::abs(measured_conditional_entropy(e, a).value.value() -
                           oracle::classical_exhaustive(e, oracle::Quantity::ConditionalEntropy, a)) <= 1e-4);
            CHECK(std::abs(measured_arimoto_information(e, a).value.value() -
                           oracle::classical_exhaustive(e, oracle::Quantity::ArimotoInformation, a)) <= 1e-4);
            CHECK(std::abs(measured_renyi_information(e, a).value.value() -
                           oracle::classical_exhaustive(e, oracle::Quantity::RenyiInformation, a)) <= 1e-4);
            CHECK(std::abs(measured_capacity(e, a).value.value() -
                           oracle::classical_exhaustive(e, oracle::Quantity::Capacity, a)) <= 1e-4);
        }
    }
}
