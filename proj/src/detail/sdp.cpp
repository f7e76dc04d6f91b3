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

#include "detail/sdp.hpp"

#include <cmath>
#include <limits>

namespace qleak::detail {

namespace {

// Inverses and log-determinants of Y - A_x; false if some slack is not positive definite.
bool slacks(const ComplexMatrix& y, const std::vector<ComplexMatrix>& a, std::vector<ComplexMatrix>* inv,
            double* logdet) {
    const Eigen::Index d = y.rows();
    double ld = 0.0;
    if (inv) inv->resize(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        Eigen::LLT<ComplexMatrix> llt(herm(y - a[x]));
        if (llt.info() != Eigen::Success) return false;
        for (Eigen::Index i = 0; i < d; ++i) {
            const double di = llt.matrixLLT()(i, i).real();
            if (!(di > 0.0)) return false;
            ld += 2.0 * std::log(di);
        }
        if (inv) (*inv)[x] = herm(llt.solve(ComplexMatrix::Identity(d, d)));
    }
    if (logdet) *logdet = ld;
    return true;
}

// Renormalizes the barrier dual mu (Y - A_x)^{-1} into an exact measurement and returns sum_x Tr[Pi_x A_x].
double measurement_value(const std::vector<ComplexMatrix>& inv, const std::vector<ComplexMatrix>& a, double mu,
                         std::vector<ComplexMatrix>& dual) {
    ComplexMatrix sum = ComplexMatrix::Zero(a.front().rows(), a.front().cols());
    for (const auto& iv : inv) sum += mu * iv;
    const ComplexMatrix sih = power_on_support(eig(sum), -0.5);
    dual.clear();
    double v = 0.0;
    for (std::size_t x = 0; x < a.size(); ++x) {
        dual.push_back(herm(sih * (mu * inv[x]) * sih));
        v += inner(dual.back(), a[x]);
    }
    return v;
}

}  // namespace

DominatingTrace min_trace_dominating(const std::vector<ComplexMatrix>& a) {
    const Eigen::Index d = a.front().rows();
    const Eigen::Index n = d * d;
    const double m = static_cast<double>(a.size());
    double top = 0.0;
    for (const auto& ax : a) top = std::max(top, eig(ax).w.maxCoeff());
    const double scale = std::max(top, 1e-300);

    std::vector<ComplexMatrix> basis(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) basis[k] = from_coords(Eigen::VectorXd::Unit(n, k), d);

    DominatingTrace out;
    ComplexMatrix y = (2.0 * scale + 1e-300) * ComplexMatrix::Identity(d, d);
    double mu = scale;
    std::vector<ComplexMatrix> inv;
    auto barrier = [&](const ComplexMatrix& yy, double muv, double* val) {
        double ld = 0.0;
        if (!slacks(yy, a, nullptr, &ld)) return false;
        *val = yy.trace().real() - muv * ld;
        return true;
    };
    const double target = 1e-14 * std::max(1.0, scale);
    // Any exact measurement gives a lower bound, so keep the best one along the path;
    // the barrier dual loses accuracy as mu approaches the conditioning limit.
    double bestDual = -std::numeric_limits<double>::infinity();
    while (true) {
        for (int it = 0; it < 100; ++it) {
            double f0 = 0.0;
            slacks(y, a, &inv, nullptr);
            barrier(y, mu, &f0);
            ComplexMatrix gm = ComplexMatrix::Identity(d, d);
            for (const auto& iv : inv) gm -= mu * iv;
            const Eigen::VectorXd g = to_coords(gm);
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
            for (Eigen::Index k = 0; k < n; ++k) {
                ComplexMatrix col = ComplexMatrix::Zero(d, d);
                for (const auto& iv : inv) col += iv * basis[k] * iv;
                h.col(k) = mu * to_coords(herm(col));
            }
            const Eigen::VectorXd step = -h.ldlt().solve(g);
            const double dec = -g.dot(step);
            ++out.iterations;
            if (!(dec > 1e-20 * std::max(1.0, std::abs(f0)))) break;
            const ComplexMatrix dy = from_coords(step, d);
            double t = 1.0, f1 = 0.0;
            bool moved = false;
            for (int ls = 0; ls < 60; ++ls) {
                if (barrier(y + t * dy, mu, &f1) && f1 <= f0 - 0.25 * t * dec) {
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
            if (!moved) break;
            y = herm(y + t * dy);
            if (dec < 1e-14) break;
        }
        slacks(y, a, &inv, nullptr);
        std::vector<ComplexMatrix> dual;
        const double dv = measurement_value(inv, a, mu, dual);
        if (dv > bestDual) {
            bestDual = dv;
            out.dual = std::move(dual);
        }
        if (y.trace().real() - bestDual <= 1e-13 * std::max(1.0, scale)) break;
        if (mu * m * static_cast<double>(d) <= target) break;
        mu *= 0.2;
    }
    out.y = y;
    out.value = y.trace().real();
    out.gap = std::max(0.0, out.value - bestDual);
    out.converged = out.gap <= 1e-10 * std::max(1.0, out.value);
    return out;
}

}  // namespace qleak::detail
