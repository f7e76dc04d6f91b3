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

// Quasi-Newton minimization with Armijo backtracking on flat real coordinates.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace qleak::detail {

struct BfgsOptions {
    double gtol = 1e-9;  // relative: |g| <= gtol * max(1, |f|)
    int maxIter = 5000;
    double armijoBeta = 0.5;
    double armijoSigma = 1e-4;
    bool record = false;
};

struct BfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    double gnorm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

/// fg(x, g) returns f(x) and writes the gradient into g. It may move x in place
/// along a direction the objective is invariant under (gauge fixing).
/// `done`, when set, is an extra stopping test evaluated at every accepted iterate.
template <class FG>
BfgsResult bfgs_minimize(FG&& fg, Eigen::VectorXd x, const BfgsOptions& opt,
                         const std::function<bool(const Eigen::VectorXd&, double, const Eigen::VectorXd&)>& done = {}) {
    const Eigen::Index n = x.size();
    BfgsResult r;
    Eigen::VectorXd g(n), gn(n), xn(n);
    double f = fg(x, g);
    Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
    bool scaled = false;
    if (opt.record) r.trace.push_back(f);
    auto stationary = [&](double fv, const Eigen::VectorXd& gv) {
        return gv.norm() <= opt.gtol * std::max(1.0, std::abs(fv));
    };
    int it = 0;
    int flat = 0;  // consecutive steps without representable progress
    bool ok = stationary(f, g) || (done && done(x, f, g));
    while (!ok && it < opt.maxIter) {
        Eigen::VectorXd p = -Hinv * g;
        double slope = g.dot(p);
        if (!(slope < 0.0)) {
            Hinv.setIdentity();
            scaled = false;
            p = -g;
            slope = -g.squaredNorm();
        }
        double t = 1.0;
        double fn = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            xn = x + t * p;
            fn = fg(xn, gn);
            if (std::isfinite(fn) && fn <= f + opt.armijoSigma * t * slope) {
                accepted = true;
                break;
            }
            t *= opt.armijoBeta;
        }
        ++it;
        if (!accepted) {
            if (Hinv.isIdentity()) break;  // steepest descent cannot make progress: precision limit
            Hinv.setIdentity();
            scaled = false;
            continue;
        }
        Eigen::VectorXd s = xn - x;
        Eigen::VectorXd y = gn - g;
        const double sy = s.dot(y);
        if (sy > 1e-16 * s.norm() * y.norm() && sy > 0.0) {
            if (!scaled) {
                Hinv *= sy / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            Eigen::VectorXd Hy = Hinv * y;
            Hinv += (rho * rho * y.dot(Hy) + rho) * (s * s.transpose()) - rho * (Hy * s.transpose() + s * Hy.transpose());
        }
        flat = (f - fn <= 4e-16 * std::max(1.0, std::abs(f))) ? flat + 1 : 0;
        x = xn;
        g = gn;
        f = fn;
        if (flat >= 8) break;
        if (opt.record) r.trace.push_back(f);
        ok = stationary(f, g) || (done && done(x, f, g));
    }
    r.x = x;
    r.f = f;
    r.gnorm = g.norm();
    r.iterations = it;
    // A stalled line search at a tiny gradient is the floating-point floor, not a failure.
    r.converged = ok || r.gnorm <= 1e3 * opt.gtol * std::max(1.0, std::abs(f));
    return r;
}

}  // namespace qleak::detail
