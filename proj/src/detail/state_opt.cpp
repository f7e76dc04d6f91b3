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

#include "detail/state_opt.hpp"

#include <cmath>

#include "detail/bfgs.hpp"
#include "qleak/probs.hpp"

namespace qleak::detail {

namespace {

struct KPoint {
    ComplexMatrix sigma;
    Eig e;  // eigensystem of the gauge-fixed K
};

// sigma = exp(K) / Tr exp(K); shifts the diagonal coordinates of x so that Tr exp(K) = 1.
KPoint state_from_coords(Eigen::VectorXd& x, Eigen::Index d) {
    Eig e = eig(from_coords(x, d));
    const double m = e.w.maxCoeff();
    const double lz = m + std::log((e.w.array() - m).exp().sum());
    for (Eigen::Index i = 0; i < d; ++i) x(i) -= lz;
    e.w.array() -= lz;
    ComplexMatrix sigma = herm(compose(e, e.w.array().exp().matrix()));
    return {std::move(sigma), std::move(e)};
}

double fw_gap(const ComplexMatrix& g, const ComplexMatrix& sigma) {
    return inner(g, sigma) - eig(g).w.minCoeff();
}

}  // namespace

StateOptResult minimize_state(const StateFunctional& phi, const ComplexMatrix& sigma0, const SolverConfig& cfg,
                              double gapTol, int maxIter) {
    const Eigen::Index d = sigma0.rows();
    StateOptResult out;
    if (d == 1) {
        out.sigma = ComplexMatrix::Identity(1, 1);
        out.value = phi(out.sigma, nullptr);
        return out;
    }
    ComplexMatrix lastG;
    ComplexMatrix lastSigma;
    auto fg = [&](Eigen::VectorXd& x, Eigen::VectorXd& g) {
        KPoint k = state_from_coords(x, d);
        ComplexMatrix grad;
        const double f = phi(k.sigma, &grad);
        if (!std::isfinite(f)) {
            g.setZero();
            return std::numeric_limits<double>::infinity();
        }
        const ComplexMatrix gk = frechet_gradient(k.e, dd_exp(k.e.w, 1.0, 0.0), grad) - inner(grad, k.sigma) * k.sigma;
        g = to_coords(gk);
        lastG = std::move(grad);
        lastSigma = std::move(k.sigma);
        return f;
    };
    auto done = [&](const Eigen::VectorXd&, double, const Eigen::VectorXd&) {
        return fw_gap(lastG, lastSigma) <= gapTol;
    };
    Eig e0 = eig(sigma0);
    const double floor = 1e-14 * std::max(e0.w.maxCoeff(), 1e-300);
    const ComplexMatrix k0 = apply(e0, [&](double v) { return std::log(std::max(v, floor)); });
    BfgsOptions opt;
    opt.gtol = 1e-14;
    opt.maxIter = maxIter;
    opt.armijoBeta = cfg.armijoBeta;
    opt.armijoSigma = cfg.armijoSigma;
    BfgsResult r = bfgs_minimize(fg, to_coords(k0), opt, done);

    Eigen::VectorXd x = r.x;
    KPoint k = state_from_coords(x, d);
    ComplexMatrix grad;
    out.value = phi(k.sigma, &grad);
    out.gap = fw_gap(grad, k.sigma);
    out.sigma = std::move(k.sigma);
    out.report.iterations = r.iterations;
    out.report.residual = out.gap;
    out.report.converged = out.gap <= gapTol || (r.converged && out.gap <= 1e3 * gapTol);
    return out;
}

BlockDivergences::BlockDivergences(std::vector<ComplexMatrix> states, double alpha, Flavor flavor,
                                   const SolverConfig& cfg)
    : states_(std::move(states)),
      alpha_(alpha),
      flavor_(flavor),
      cfg_(cfg),
      warm_(states_.size()),
      haveWarm_(states_.size(), false) {}

void BlockDivergences::eval(const ComplexMatrix& sigma, std::vector<double>& d, std::vector<ComplexMatrix>* grads) {
    d.assign(states_.size(), 0.0);
    if (grads) grads->assign(states_.size(), ComplexMatrix::Zero(sigma.rows(), sigma.cols()));
    for (std::size_t x = 0; x < states_.size(); ++x) {
        if (flavor_ == Flavor::Measured) {
            InnerSolve s = solve_measured(states_[x], sigma, alpha_, cfg_, haveWarm_[x] ? &warm_[x] : nullptr);
            d[x] = s.value;
            report_.absorb(s.report);
            if (s.hasOmega) {
                warm_[x] = s.h;
                haveWarm_[x] = true;
                if (grads) (*grads)[x] = -s.omega;
            }
        } else if (std::isinf(alpha_)) {
            ComplexMatrix om;
            d[x] = dmax_value(states_[x], sigma, &om);
            if (grads && std::isfinite(d[x])) (*grads)[x] = -om;
        } else {
            d[x] = sandwiched_with_gradient(states_[x], sigma, alpha_, grads ? &(*grads)[x] : nullptr);
        }
    }
}

double log_sum_exp(const std::vector<double>& d, const std::vector<double>& lw, double tau, std::vector<double>* pi) {
    std::vector<double> a(d.size());
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d.size(); ++i) {
        a[i] = d[i] / tau + lw[i];
        m = std::max(m, a[i]);
    }
    double s = 0.0;
    for (double v : a) s += std::exp(v - m);
    if (pi) {
        pi->resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) (*pi)[i] = std::exp(a[i] - m) / s;
    }
    return tau * (m + std::log(s));
}

namespace {

StateFunctional weighted_functional(BlockDivergences& blocks, const std::vector<double>& lw, double tau, bool linear) {
    return [&blocks, lw, tau, linear](const ComplexMatrix& sigma, ComplexMatrix* grad) {
        std::vector<double> d;
        std::vector<ComplexMatrix> gs;
        blocks.eval(sigma, d, grad ? &gs : nullptr);
        for (double v : d)
            if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        std::vector<double> pi(d.size());
        double val;
        if (linear) {
            val = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                pi[i] = std::exp(lw[i]);
                val += pi[i] * d[i];
            }
        } else {
            val = log_sum_exp(d, lw, tau, &pi);
        }
        if (grad) {
            grad->setZero(sigma.rows(), sigma.cols());
            for (std::size_t i = 0; i < d.size(); ++i) *grad += pi[i] * gs[i];
        }
        return val;
    };
}

}  // namespace

WeightedMin weighted_min(BlockDivergences& blocks, const std::vector<double>& lw, const ComplexMatrix& sigma0,
                         const SolverConfig& cfg) {
    const double alpha = blocks.alpha();
    if (std::isinf(alpha)) throw DomainError("weighted_min: alpha = inf is handled by the semidefinite program");
    const bool linear = is_alpha_one(alpha);
    const double tau = linear ? 0.0 : 1.0 / (alpha - 1.0);
    blocks.reset_report();
    StateOptResult r = minimize_state(weighted_functional(blocks, lw, tau, linear), sigma0, cfg, state_gap_tol(cfg),
                                      state_max_iter(cfg));
    WeightedMin out;
    // refresh D_x at the returned point (the last functional call may be a line-search trial)
    blocks.eval(r.sigma, out.d, nullptr);
    out.value = r.value;
    out.sigma = std::move(r.sigma);
    out.gap = r.gap;
    out.report = r.report;
    out.report.converged = r.report.converged && blocks.report().converged;
    out.report.iterations += blocks.report().iterations;
    return out;
}

namespace {

// Temperature schedule tau = 10, 5, ... down to tauMin, each stage warm-started.
template <class MakeFunctional>
StateOptResult anneal(MakeFunctional make, const ComplexMatrix& sigma0, const SolverConfig& cfg, double tauMin,
                      WeightedMin& out) {
    ComplexMatrix sigma = sigma0;
    StateOptResult r;
    double tau = 10.0;
    bool last = false;
    int stages = 0;
    while (!last) {
        if (tau <= tauMin * (1.0 + 1e-12)) {
            tau = tauMin;
            last = true;
        }
        // intermediate stages only provide warm starts
        const double tol = last ? state_gap_tol(cfg) : std::max(state_gap_tol(cfg), 1e-6);
        r = minimize_state(make(tau), sigma, cfg, tol, state_max_iter(cfg));
        sigma = r.sigma;
        out.report.iterations += r.report.iterations;
        ++stages;
        tau *= 0.5;
    }
    out.gap = r.gap;
    out.report.converged = r.gap <= kRadiusGapAccept;
    out.report.restarts = stages;
    return r;
}

}  // namespace

WeightedMin smoothed_radius(BlockDivergences& blocks, const ComplexMatrix& sigma0, const SolverConfig& cfg,
                            double tauMin) {
    const std::vector<double> lw(blocks.size(), 0.0);
    blocks.reset_report();
    WeightedMin out;
    StateOptResult r = anneal([&](double tau) { return weighted_functional(blocks, lw, tau, false); }, sigma0, cfg,
                              tauMin, out);
    blocks.eval(r.sigma, out.d, nullptr);
    out.value = *std::max_element(out.d.begin(), out.d.end());
    out.sigma = std::move(r.sigma);
    out.report.converged = out.report.converged && blocks.report().converged;
    out.report.iterations += blocks.report().iterations;
    out.report.residual = out.gap + tauMin * std::log(static_cast<double>(blocks.size()));
    return out;
}

WeightedMin smoothed_dmax_radius(const std::vector<ComplexMatrix>& states, const ComplexMatrix& sigma0,
                                 const SolverConfig& cfg, double tauMin) {
    std::vector<ComplexMatrix> roots;
    for (const auto& r : states) roots.push_back(herm(apply(eig(r), [](double v) { return std::sqrt(std::max(v, 0.0)); })));
    auto make = [&](double tau) -> StateFunctional {
        return [&roots, tau](const ComplexMatrix& sigma, ComplexMatrix* grad) {
            const double p = 1.0 / tau;
            const ComplexMatrix sinv = power_on_support(eig(sigma), -1.0);
            std::vector<double> l(roots.size());
            std::vector<ComplexMatrix> m(roots.size());
            for (std::size_t x = 0; x < roots.size(); ++x) {
                Eig e = eig(roots[x] * sinv * roots[x]);
                const double top = e.w.maxCoeff();
                RealVector rel = (e.w.array().max(0.0) / top).matrix();
                double s = 0.0;
                for (Eigen::Index i = 0; i < rel.size(); ++i) s += std::pow(rel(i), p);
                l[x] = p * std::log(top) + std::log(s);
                if (grad) {
                    RealVector f(rel.size());
                    for (Eigen::Index i = 0; i < rel.size(); ++i) f(i) = std::pow(rel(i), p - 1.0) / (top * s);
                    m[x] = compose(e, f);
                }
            }
            const std::vector<double> zero(l.size(), 0.0);
            std::vector<double> pi;
            const double val = log_sum_exp(l, zero, 1.0, &pi);
            if (grad) {
                grad->setZero(sigma.rows(), sigma.cols());
                for (std::size_t x = 0; x < roots.size(); ++x) *grad -= pi[x] * (sinv * roots[x] * m[x] * roots[x] * sinv);
                *grad = herm(*grad);
            }
            return tau * val;
        };
    };
    WeightedMin out;
    StateOptResult r = anneal(make, sigma0, cfg, tauMin, out);
    out.d.resize(states.size());
    for (std::size_t x = 0; x < states.size(); ++x) out.d[x] = dmax_value(states[x], r.sigma);
    out.value = *std::max_element(out.d.begin(), out.d.end());
    out.sigma = std::move(r.sigma);
    const double dim = static_cast<double>(sigma0.rows());
    out.report.residual = out.gap + tauMin * std::log(static_cast<double>(states.size()) * dim);
    return out;
}

ComplexMatrix joint_support(const std::vector<ComplexMatrix>& states) {
    ComplexMatrix sum = ComplexMatrix::Zero(states.front().rows(), states.front().cols());
    for (const auto& s : states) sum += s;
    Eig e = eig(sum);
    const double eps = supp_eps(e.w);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < e.w.size(); ++i)
        if (e.w(i) >= eps) keep.push_back(i);
    ComplexMatrix v(sum.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = e.U.col(keep[k]);
    return v;
}

}  // namespace qleak::detail
