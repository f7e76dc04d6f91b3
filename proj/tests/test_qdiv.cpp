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

#include "detail/state_opt.hpp"
#include "qleak/qdiv.hpp"
#include "support/generators.hpp"

using namespace qleak;
using qleak::testing::Rng;

namespace {

DensityMatrix ket0() { return DensityMatrix::diagonal(std::vector<double>{1.0, 0.0}); }

DensityMatrix ket_plus() {
    ComplexVector v(2);
    v << 1.0, 1.0;
    return DensityMatrix::pure(v / std::sqrt(2.0));
}

double fidelity_divergence(const DensityMatrix& rho, const HermitianOperator& sigma) {
    const HermitianOperator s = matrix_power_on_support(sigma, 0.5);
    const HermitianOperator inner = hermitian_unchecked(s.matrix() * rho.matrix() * s.matrix());
    return -2.0 * std::log(matrix_power_on_support(inner, 0.5).trace());
}

double povm_divergence(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha, const Povm& m) {
    std::vector<double> p, q;
    for (const auto& e : m.elements()) {
        p.push_back(std::max(0.0, (rho.matrix() * e.matrix()).trace().real()));
        q.push_back(std::max(0.0, (sigma.matrix() * e.matrix()).trace().real()));
    }
    return classical::divergence(p, q, alpha);
}

}  // namespace

TEST_CASE("sandwiched divergence values") {
    Rng g(21);
    const DensityMatrix r = qleak::testing::ginibre_state(3, g);
    for (double a : {0.5, 0.75, 1.0, 2.0, kInf}) CHECK(std::abs(sandwiched(r, r.op(), a).value.value()) < 1e-10);
    CHECK(sandwiched(ket_plus(), ket0().op(), 0.5).value.value() == doctest::Approx(std::log(2.0)));
    CHECK(sandwiched(ket_plus(), ket0().op(), 2.0).value.is_infinite());
    CHECK_THROWS_AS(sandwiched(r, ket0().op(), 2.0), DimensionMismatch);
    CHECK_THROWS_AS(sandwiched(r, r.op(), 0.0), DomainError);
}

TEST_CASE("umegaki and max-relative entropy values") {
    const DensityMatrix a = DensityMatrix::diagonal(std::vector<double>{0.7, 0.3});
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    CHECK(std::abs(umegaki(a, a.op()).value.value()) < 1e-12);
    CHECK(umegaki(a, mixed.op()).value.value() == doctest::Approx(0.7 * std::log(1.4) + 0.3 * std::log(0.6)));
    CHECK(umegaki(ket0(), ket_plus().op()).value.is_infinite());
    CHECK(std::abs(max_relative_entropy(a, a.op()).value.value()) < 1e-12);
    CHECK(max_relative_entropy(ket0(), mixed.op()).value.value() == doctest::Approx(std::log(2.0)));
    CHECK(max_relative_entropy(mixed, ket0().op()).value.is_infinite());
}

TEST_CASE("measured divergence values") {
    const DensityMatrix a = DensityMatrix::diagonal(std::vector<double>{0.7, 0.3});
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    CHECK(measured(a, mixed.op(), 2.0).value.value() == doctest::Approx(std::log(1.16)));

    ComplexMatrix s(2, 2);
    s << 0.5, 1.0 / 6.0, 1.0 / 6.0, 0.5;  // (2/3)|+><+| + (1/3)|-><-|
    CHECK(measured(ket0(), HermitianOperator(s), 0.5).value.value() == doctest::Approx(std::log(2.0)));

    Rng g(22);
    for (int t = 0; t < 5; ++t) {
        const DensityMatrix r = qleak::testing::ginibre_state(2 + t % 2, g);
        for (double al : {0.0, 0.5, 1.0, 2.0, 3.5, kInf}) CHECK(std::abs(measured(r, r.op(), al).value.value()) < 1e-8);
    }
    CHECK(measured(ket_plus(), ket0().op(), 2.0).value.is_infinite());
    CHECK_THROWS_AS(measured(a, DensityMatrix::maximally_mixed(3).op(), 2.0), DimensionMismatch);
}

TEST_CASE("measured quasi values") {
    const DensityMatrix a = DensityMatrix::diagonal(std::vector<double>{0.7, 0.3});
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    const Povm trivial({HermitianOperator::identity(2)});
    CHECK(measured_quasi(a, mixed.op(), 2.0, trivial) == doctest::Approx(1.0));
    CHECK(measured_quasi(a, mixed.op(), 2.0, Povm::computational_basis(2)) == doctest::Approx(1.16));
    Rng g(23);
    const DensityMatrix r = qleak::testing::ginibre_state(3, g);
    CHECK(measured_quasi(r, r.op(), 2.0, qleak::testing::random_povm(3, 4, g)) == doctest::Approx(1.0));
}

TEST_CASE("measured divergence lies below the sandwiched divergence") {
    Rng g(24);
    for (int t = 0; t < 100; ++t) {
        const int d = 2 + t % 2;
        const DensityMatrix r = qleak::testing::ginibre_state(d, g);
        const DensityMatrix s = qleak::testing::ginibre_state(d, g);
        for (double a : {0.6, 0.75, 1.0, 2.0, 3.0})
            CHECK(measured(r, s.op(), a).value.value() <= sandwiched(r, s.op(), a).value.value() + 1e-6);
        for (double a : {0.5, kInf})
            CHECK(std::abs(measured(r, s.op(), a).value.value() - sandwiched(r, s.op(), a).value.value()) <= 1e-6);
    }
}

TEST_CASE("commuting pairs reduce to the classical divergence") {
    Rng g(25);
    for (int t = 0; t < 30; ++t) {
        const int d = 2 + t % 3;
        const auto st = qleak::testing::commuting_states(d, 2, g);
        const Eigensystem e = eigh(st[0].op());
        std::vector<double> p(d), q(d);
        for (int i = 0; i < d; ++i) {
            p[i] = (e.vectors.col(i).adjoint() * st[0].matrix() * e.vectors.col(i))(0, 0).real();
            q[i] = (e.vectors.col(i).adjoint() * st[1].matrix() * e.vectors.col(i))(0, 0).real();
        }
        for (double a : {0.5, 1.0, 2.0, 5.0, kInf}) {
            const double c = classical::divergence(p, q, a);
            CHECK(measured(st[0], st[1].op(), a).value.value() == doctest::Approx(c).epsilon(1e-6));
            CHECK(sandwiched(st[0], st[1].op(), a).value.value() == doctest::Approx(c).epsilon(1e-6));
        }
    }
}

TEST_CASE("fidelity closed form at one half") {
    Rng g(26);
    for (int t = 0; t < 20; ++t) {
        const DensityMatrix r = qleak::testing::ginibre_state(2 + t % 3, g);
        const DensityMatrix s = qleak::testing::ginibre_state(2 + t % 3, g);
        CHECK(measured(r, s.op(), 0.5).value.value() == doctest::Approx(fidelity_divergence(r, s.op())).epsilon(1e-9));
    }
}

TEST_CASE("data processing under random channels") {
    Rng g(27);
    for (int t = 0; t < 20; ++t) {
        const int din = 2 + t % 2, dout = 2 + (t / 2) % 2;
        const DensityMatrix r = qleak::testing::ginibre_state(din, g);
        const DensityMatrix s = qleak::testing::ginibre_state(din, g);
        const auto kraus = qleak::testing::random_channel(din, dout, 2, g);
        const DensityMatrix nr = kraus_apply(r, kraus), ns = kraus_apply(s, kraus);
        for (double a : {0.5, 0.75, 1.0, 2.0, kInf})
            CHECK(measured(nr, ns.op(), a).value.value() <= measured(r, s.op(), a).value.value() + 1e-5);
    }
}

TEST_CASE("measured divergence is super-additive") {
    Rng g(28);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix r1 = qleak::testing::ginibre_state(2, g), s1 = qleak::testing::ginibre_state(2, g);
        const DensityMatrix r2 = qleak::testing::ginibre_state(2, g), s2 = qleak::testing::ginibre_state(2, g);
        for (double a : {0.75, 2.0}) {
            const double joint = measured(tensor(r1, r2), tensor(s1.op(), s2.op()), a).value.value();
            const double sum = measured(r1, s1.op(), a).value.value() + measured(r2, s2.op(), a).value.value();
            CHECK(joint >= sum - 1e-4);
        }
    }
}

TEST_CASE("measured divergence dominates every fixed measurement") {
    Rng g(29);
    for (int t = 0; t < 30; ++t) {
        const int d = 2 + t % 2;
        const DensityMatrix r = qleak::testing::ginibre_state(d, g), s = qleak::testing::ginibre_state(d, g);
        const Povm m = qleak::testing::random_povm(d, 2 + t % 3, g);
        for (double a : {0.3, 0.75, 1.0, 2.0, 4.0})
            CHECK(measured(r, s.op(), a).value.value() >= povm_divergence(r, s.op(), a, m) - 1e-9);
    }
}

TEST_CASE("measured divergence is non-decreasing in alpha") {
    Rng g(30);
    const std::vector<double> grid{0.5, 0.75, 1.0, 1.5, 2.0, 5.0, kInf};
    for (int t = 0; t < 30; ++t) {
        const DensityMatrix r = qleak::testing::ginibre_state(2 + t % 2, g), s = qleak::testing::ginibre_state(2 + t % 2, g);
        double prev = -1.0;
        for (double a : grid) {
            const double v = measured(r, s.op(), a).value.value();
            CHECK(v >= prev - 1e-5);
            prev = v;
        }
    }
}

TEST_CASE("ascent traces are non-decreasing") {
    Rng g(31);
    SolverConfig cfg;
    cfg.recordTrace = true;
    for (int t = 0; t < 20; ++t) {
        const DensityMatrix r = qleak::testing::ginibre_state(3, g), s = qleak::testing::ginibre_state(3, g);
        const DivergenceResult m = measured(r, s.op(), t % 2 ? 3.0 : 0.7, cfg);
        REQUIRE(m.report.objectiveTrace.has_value());
        const auto& tr = *m.report.objectiveTrace;
        for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr[i] >= tr[i - 1] - 1e-12);
    }
}

TEST_CASE("optimizer is the negative sigma-gradient") {
    Rng g(32);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix r = qleak::testing::ginibre_state(2, g), s = qleak::testing::ginibre_state(2, g);
        const double a = t % 2 ? 2.0 : 0.75;
        const MeasuredSolution sol = measured_with_optimizer(r, s.op(), a);
        REQUIRE(sol.optimizer.has_value());
        CHECK(std::abs((s.matrix() * sol.optimizer->matrix()).trace().real() - 1.0) < 1e-8);
        const HermitianOperator dir = qleak::testing::random_hermitian(2, g);
        const double h = 1e-5;
        const double fp = measured(r, s.op() + dir * h, a).value.value();
        const double fm = measured(r, s.op() - dir * h, a).value.value();
        const double fd = (fp - fm) / (2.0 * h);
        const double an = -(sol.optimizer->matrix() * dir.matrix()).trace().real();
        CHECK(std::abs(fd - an) <= 1e-4 * std::max(1.0, std::abs(an)));
    }
}

TEST_CASE("sandwiched blocks are infinite off the support for alpha above one") {
    Rng g(33);
    const DensityMatrix r = qleak::testing::ginibre_state(2, g);
    const ComplexMatrix singular = ket_plus().matrix();
    for (double a : {0.75, 2.0}) {
        detail::BlockDivergences blocks({r.matrix()}, a, detail::Flavor::Sandwiched, SolverConfig{});
        std::vector<double> d;
        std::vector<ComplexMatrix> grads;
        blocks.eval(singular, d, &grads);
        if (a > 1.0)
            CHECK(std::isinf(d[0]));
        else
            CHECK(d[0] == doctest::Approx(sandwiched(r, ket_plus().op(), a).value.value()));
    }
}
