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

#include "qleak/qdiv.hpp"

#include <cmath>
#include <random>
#include <string>

#include "detail/bfgs.hpp"
#include "detail/divergence.hpp"
#include "qleak/probs.hpp"

namespace qleak {

namespace detail {

namespace {

void require_pair(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    if (rho.rows() != sigma.rows())
        throw DimensionMismatch("divergence: rho is " + std::to_string(rho.rows()) + "-dimensional, sigma is " +
                                std::to_string(sigma.rows()) + "-dimensional");
}

void require_alpha(double alpha) {
    if (std::isnan(alpha) || alpha < 0.0) throw DomainError("alpha must be in [0, inf]");
}

// Columns of e.U spanning the support.
ComplexMatrix support_basis(const Eig& e) {
    const double eps = supp_eps(e.w);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < e.w.size(); ++i)
        if (e.w(i) >= eps) ++k;
    ComplexMatrix v(e.U.rows(), k);
    k = 0;
    for (Eigen::Index i = 0; i < e.w.size(); ++i)
        if (e.w(i) >= eps) v.col(k++) = e.U.col(i);
    return v;
}

// log Tr[A e^{cH}] in the eigenbasis of H (at = U^dagger A U); writes the
// eigenbasis gradient into g when requested.
double log_trace_exp(const RealVector& w, const ComplexMatrix& at, double c, ComplexMatrix* g) {
    const double m = (c * w).maxCoeff();
    double t = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) t += at(i, i).real() * std::exp(c * w(i) - m);
    if (g) *g = at.cwiseProduct(dd_exp(w, c, m).cast<Complex>()) / t;
    return m + std::log(t);
}

// Objective of the variational formula on (rho, sigma). Coordinates are those
// of to_coords; fg negates for minimization and fixes the gauge Tr[sigma e^H] = 1.
struct LogOmegaObjective {
    const ComplexMatrix& rho;
    const ComplexMatrix& sigma;
    double alpha;
    bool one;

    double eval(const ComplexMatrix& h, ComplexMatrix* grad, double* logSigma = nullptr) const {
        Eig e = eig(h);
        const ComplexMatrix rt = e.U.adjoint() * rho * e.U;
        const ComplexMatrix st = e.U.adjoint() * sigma * e.U;
        ComplexMatrix gs, gr;
        const double ls = log_trace_exp(e.w, st, 1.0, grad ? &gs : nullptr);
        if (logSigma) *logSigma = ls;
        double f;
        ComplexMatrix geig;
        if (one) {
            double lin = 0.0;
            for (Eigen::Index i = 0; i < e.w.size(); ++i) lin += rt(i, i).real() * e.w(i);
            f = lin - ls;
            if (grad) geig = rt - gs;
        } else {
            const double beta = (alpha - 1.0) / alpha;
            const double lr = log_trace_exp(e.w, rt, beta, grad ? &gr : nullptr);
            f = lr / beta - ls;
            if (grad) geig = gr / beta - gs;
        }
        if (grad) *grad = herm(e.U * geig * e.U.adjoint());
        return f;
    }
};

ComplexMatrix floored_log(const ComplexMatrix& m, double floor) {
    return apply(eig(m), [&](double x) { return std::log(std::max(x, floor)); });
}

// Raises eigenvalues to at least lambda_max - width; deep negative directions
// of H make exp(beta H) underflow and flatten the objective.
ComplexMatrix clamp_spectrum(const ComplexMatrix& h, double width) {
    Eig e = eig(h);
    const double lo = e.w.maxCoeff() - width;
    return herm(apply(e, [&](double x) { return std::max(x, lo); }));
}

constexpr double kStartWidth = 20.0;

struct AscentRun {
    double f = 0.0;
    ComplexMatrix h;
    BfgsResult bfgs;
};

AscentRun ascend(const LogOmegaObjective& obj, const ComplexMatrix& h0, const SolverConfig& cfg) {
    const Eigen::Index d = h0.rows();
    auto fg = [&](Eigen::VectorXd& x, Eigen::VectorXd& g) {
        ComplexMatrix h = from_coords(x, d);
        ComplexMatrix grad;
        double ls = 0.0;
        const double f = obj.eval(h, &grad, &ls);
        // gauge: shift H by -log Tr[sigma e^H] so that Tr[sigma omega] = 1
        for (Eigen::Index i = 0; i < d; ++i) x(i) -= ls;
        g = -to_coords(grad);
        return -f;
    };
    BfgsOptions opt;
    opt.gtol = cfg.tol;
    opt.maxIter = cfg.maxIter;
    opt.armijoBeta = cfg.armijoBeta;
    opt.armijoSigma = cfg.armijoSigma;
    opt.record = cfg.recordTrace;
    BfgsResult r = bfgs_minimize(fg, to_coords(h0), opt);
    for (double& v : r.trace) v = -v;
    return {-r.f, from_coords(r.x, d), std::move(r)};
}

InnerSolve classical_path(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha) {
    const ComplexMatrix u = joint_basis(sigma, rho);
    const Eigen::Index d = rho.rows();
    RealVector p(d), q(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        p(i) = std::max(0.0, (u.col(i).adjoint() * rho * u.col(i))(0, 0).real());
        q(i) = std::max(0.0, (u.col(i).adjoint() * sigma * u.col(i))(0, 0).real());
    }
    const double pe = supp_eps(p), qe = supp_eps(q);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (p(i) < pe) p(i) = 0.0;
        if (q(i) < qe) q(i) = 0.0;
    }
    InnerSolve out;
    out.value = classical::divergence(std::span<const double>(p.data(), d), std::span<const double>(q.data(), d), alpha);
    if (!std::isfinite(out.value)) return out;
    const bool one = is_alpha_one(alpha);
    const double quasi = one ? 1.0 : std::exp((alpha - 1.0) * out.value);
    RealVector om(d), lh(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (q(i) <= 0.0 || p(i) <= 0.0) {
            om(i) = 0.0;
        } else {
            om(i) = one ? p(i) / q(i) : std::pow(p(i) / q(i), alpha) / quasi;
        }
        lh(i) = std::log(std::max(om(i), 1e-12));
    }
    out.hasOmega = true;
    out.omega = herm(u * om.asDiagonal() * u.adjoint());
    out.h = herm(u * lh.asDiagonal() * u.adjoint());
    return out;
}

InnerSolve fidelity_path(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    Eig es = eig(sigma);
    const ComplexMatrix sh = power_on_support(es, 0.5);
    Eig ea = eig(sh * rho * sh);
    const double eps = supp_eps(ea.w);
    double fid = 0.0;
    for (Eigen::Index i = 0; i < ea.w.size(); ++i)
        if (ea.w(i) >= eps) fid += std::sqrt(ea.w(i));
    InnerSolve out;
    if (fid <= 0.0) {
        out.value = kInfD;
        return out;
    }
    out.value = -2.0 * std::log(fid);
    if (es.w.minCoeff() >= supp_eps(es.w)) {
        const ComplexMatrix shi = power_on_support(es, -0.5);
        out.omega = herm(shi * power_on_support(ea, 0.5) * shi) / fid;
        out.h = floored_log(out.omega, 1e-12);
        out.hasOmega = true;
    }
    return out;
}

InnerSolve order_zero_path(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    const ComplexMatrix proj = support_projection(eig(rho));
    const double q = inner(sigma, proj);
    InnerSolve out;
    if (q <= 0.0) {
        out.value = kInfD;
        return out;
    }
    out.value = -std::log(q);
    out.omega = proj / q;
    out.h = floored_log(out.omega, 1e-12);
    out.hasOmega = true;
    return out;
}

}  // namespace

double kernel_weight(const ComplexMatrix& rho, const Eig& sigma) {
    const double eps = supp_eps(sigma.w);
    double k = 0.0;
    for (Eigen::Index i = 0; i < sigma.w.size(); ++i)
        if (sigma.w(i) < eps) k += (sigma.U.col(i).adjoint() * rho * sigma.U.col(i))(0, 0).real();
    return k;
}

ComplexMatrix random_hermitian(Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(n(gen), n(gen));
    return herm(g);
}

double dmax_value(const ComplexMatrix& rho, const ComplexMatrix& sigma, ComplexMatrix* omega) {
    require_pair(rho, sigma);
    Eig es = eig(sigma);
    if (kernel_weight(rho, es) > kSupportLeak) return kInfD;
    const ComplexMatrix v = support_basis(es);
    RealVector s(v.cols());
    for (Eigen::Index i = 0; i < v.cols(); ++i) s(i) = (v.col(i).adjoint() * sigma * v.col(i))(0, 0).real();
    const RealVector sinv = s.cwiseSqrt().cwiseInverse();
    const ComplexMatrix b = sinv.asDiagonal() * (v.adjoint() * rho * v) * sinv.asDiagonal();
    Eig eb = eig(b);
    const Eigen::Index top = eb.w.size() - 1;
    if (omega) {
        const ComplexVector vec = v * (sinv.asDiagonal() * eb.U.col(top));
        *omega = vec * vec.adjoint();
    }
    return std::log(eb.w(top));
}

double umegaki_value(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    require_pair(rho, sigma);
    Eig es = eig(sigma);
    if (kernel_weight(rho, es) > kSupportLeak) return kInfD;
    Eig er = eig(rho);
    const double eps = supp_eps(er.w);
    double s = 0.0;
    for (Eigen::Index i = 0; i < er.w.size(); ++i)
        if (er.w(i) >= eps) s += er.w(i) * std::log(er.w(i));
    return s - inner(rho, log_on_support(es));
}

double sandwiched_value(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha) {
    require_pair(rho, sigma);
    require_alpha(alpha);
    if (std::isinf(alpha)) return dmax_value(rho, sigma);
    if (is_alpha_one(alpha)) return umegaki_value(rho, sigma);
    if (alpha == 0.0) throw DomainError("sandwiched divergence is defined here for alpha > 0");
    Eig es = eig(sigma);
    if (alpha > 1.0 && kernel_weight(rho, es) > kSupportLeak) return kInfD;
    const double gamma = (1.0 - alpha) / (2.0 * alpha);
    const ComplexMatrix sg = power_on_support(es, gamma);
    Eig ea = eig(sg * rho * sg);
    const double eps = supp_eps(ea.w);
    double q = 0.0;
    for (Eigen::Index i = 0; i < ea.w.size(); ++i)
        if (ea.w(i) >= eps) q += std::pow(ea.w(i), alpha);
    if (q <= 0.0) return kInfD;
    return std::log(q) / (alpha - 1.0);
}

double sandwiched_with_gradient(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha,
                                ComplexMatrix* grad) {
    Eig es = eig(sigma);
    if (is_alpha_one(alpha)) {
        const double v = umegaki_value(rho, sigma);
        if (grad) *grad = -frechet_gradient(es, dd_log(es.w), rho);
        return v;
    }
    if (alpha > 1.0 && kernel_weight(rho, es) > kSupportLeak) return kInfD;
    const double gamma = (1.0 - alpha) / (2.0 * alpha);
    const ComplexMatrix sg = power_on_support(es, gamma);
    Eig ea = eig(sg * rho * sg);
    const double eps = supp_eps(ea.w);
    double q = 0.0;
    RealVector pm(ea.w.size());
    for (Eigen::Index i = 0; i < ea.w.size(); ++i) {
        if (ea.w(i) >= eps) {
            q += std::pow(ea.w(i), alpha);
            pm(i) = std::pow(ea.w(i), alpha - 1.0);
        } else {
            pm(i) = 0.0;
        }
    }
    if (q <= 0.0) return kInfD;
    if (grad) {
        const ComplexMatrix am = compose(ea, pm);
        const ComplexMatrix x = rho * sg * am;
        const ComplexMatrix m = alpha * (x + x.adjoint());
        *grad = frechet_gradient(es, dd_power(es.w, gamma), m) / ((alpha - 1.0) * q);
    }
    return std::log(q) / (alpha - 1.0);
}

InnerSolve solve_measured(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha, const SolverConfig& cfg,
                          const ComplexMatrix* warm) {
    require_pair(rho, sigma);
    require_alpha(alpha);
    if (std::isinf(alpha)) {
        InnerSolve out;
        ComplexMatrix om;
        out.value = dmax_value(rho, sigma, &om);
        if (std::isfinite(out.value)) {
            out.omega = om;
            out.h = floored_log(om, 1e-12);
            out.hasOmega = true;
        }
        return out;
    }
    if (alpha == 0.0) return order_zero_path(rho, sigma);
    if (commutator_norm(rho, sigma) <= kCommuteTol) return classical_path(rho, sigma, alpha);
    if (alpha == 0.5) return fidelity_path(rho, sigma);

    const bool one = is_alpha_one(alpha);
    Eig es = eig(sigma);
    const bool singular = es.w.minCoeff() < supp_eps(es.w);
    if (alpha >= 1.0 && singular && kernel_weight(rho, es) > kSupportLeak) {
        InnerSolve out;
        out.value = kInfD;
        return out;
    }
    // For alpha >= 1 the problem lives on supp(sigma); below 1 the kernel of sigma
    // is a free direction of the ascent and the full space is kept.
    const bool reduce = alpha >= 1.0 && singular;
    ComplexMatrix v, r, s;
    if (reduce) {
        v = support_basis(es);
        r = herm(v.adjoint() * rho * v);
        s = herm(v.adjoint() * sigma * v);
    } else {
        r = rho;
        s = sigma;
    }
    LogOmegaObjective obj{r, s, alpha, one};
    const Eigen::Index d = r.rows();

    // Nested calls continue from the previous optimum, falling back to the fixed
    // starts only if that stalls; standalone calls run the full restart sweep.
    std::vector<ComplexMatrix> starts;
    const double scale = one ? 1.0 : alpha;
    const ComplexMatrix logRatio = scale * (floored_log(r, 1e-10) - floored_log(s, 1e-10));
    const bool nested = warm && !reduce && warm->rows() == d;
    if (nested) {
        starts = {*warm, logRatio, ComplexMatrix::Zero(d, d)};
    } else if (one) {
        starts = {logRatio, ComplexMatrix::Zero(d, d)};
    } else {
        starts = {ComplexMatrix::Zero(d, d), floored_log(r, 1e-10), floored_log(s, 1e-10), logRatio};
        starts.resize(static_cast<std::size_t>(std::max(cfg.restarts, 1)) < starts.size()
                          ? static_cast<std::size_t>(std::max(cfg.restarts, 1))
                          : starts.size());
        for (std::uint64_t k = 0; static_cast<int>(starts.size()) < cfg.restarts; ++k)
            starts.push_back(random_hermitian(d, cfg.seed * 7919 + k));
    }
    const bool sweep = !nested && !one;

    InnerSolve out;
    out.value = -kInfD;
    AscentRun best;
    bool have = false;
    for (const auto& h0 : starts) {
        if (!sweep && have && best.bfgs.converged) break;
        AscentRun run = ascend(obj, clamp_spectrum(h0, kStartWidth), cfg);
        out.report.iterations += run.bfgs.iterations;
        ++out.report.restarts;
        if (!have || run.f > best.f || (run.bfgs.converged && !best.bfgs.converged && run.f >= best.f - 1e-12)) {
            best = std::move(run);
            have = true;
        }
    }
    out.value = best.f;
    out.report.converged = best.bfgs.converged;
    out.report.residual = best.bfgs.gnorm;
    if (cfg.recordTrace) out.report.objectiveTrace = best.bfgs.trace;
    ComplexMatrix h = best.h;
    ComplexMatrix om = apply(eig(h), [](double x) { return std::exp(x); });
    om /= inner(s, om);
    if (reduce) {
        out.omega = herm(v * om * v.adjoint());
        out.hasOmega = true;
        out.h = floored_log(out.omega, 1e-12);
    } else if (!singular) {
        out.omega = om;
        out.h = h;
        out.hasOmega = true;
    }
    return out;
}

}  // namespace detail

namespace {

DivergenceResult closed(double v) { return {ExtReal(v), SolveReport{}}; }

}  // namespace

DivergenceResult sandwiched(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha) {
    return closed(detail::sandwiched_value(rho.matrix(), sigma.matrix(), alpha));
}

DivergenceResult umegaki(const DensityMatrix& rho, const HermitianOperator& sigma) {
    return closed(detail::umegaki_value(rho.matrix(), sigma.matrix()));
}

DivergenceResult max_relative_entropy(const DensityMatrix& rho, const HermitianOperator& sigma) {
    return closed(detail::dmax_value(rho.matrix(), sigma.matrix()));
}

MeasuredSolution measured_with_optimizer(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha,
                                         const SolverConfig& cfg) {
    detail::InnerSolve s = detail::solve_measured(rho.matrix(), sigma.matrix(), alpha, cfg);
    MeasuredSolution out{ExtReal(s.value), s.report, std::nullopt};
    if (s.hasOmega) out.optimizer = hermitian_unchecked(s.omega);
    return out;
}

DivergenceResult measured(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha,
                          const SolverConfig& cfg) {
    detail::InnerSolve s = detail::solve_measured(rho.matrix(), sigma.matrix(), alpha, cfg);
    return {ExtReal(s.value), s.report};
}

double measured_quasi(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha, const Povm& povm) {
    if (rho.dim() != sigma.dim() || povm.dim() != rho.dim()) throw DimensionMismatch("measured_quasi: dimensions differ");
    if (std::isnan(alpha) || alpha < 0.0 || std::isinf(alpha) || is_alpha_one(alpha))
        throw DomainError("quasi-divergence is defined for finite alpha >= 0, alpha != 1");
    std::vector<double> p, q;
    for (const auto& el : povm.elements()) {
        p.push_back(std::max(0.0, detail::inner(rho.matrix(), el.matrix())));
        q.push_back(std::max(0.0, detail::inner(sigma.matrix(), el.matrix())));
    }
    if (alpha == 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > 0.0) s += q[i];
        return s;
    }
    return classical::quasi(p, q, alpha);
}

MeasuredObjective::MeasuredObjective(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha)
    : rho_(rho.matrix()), sigma_(sigma.matrix()), alpha_(alpha) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("MeasuredObjective: dimensions differ");
    if (!(alpha > 0.0) || std::isinf(alpha)) throw DomainError("MeasuredObjective: alpha must be finite and positive");
}

double MeasuredObjective::value(const HermitianOperator& h) const {
    detail::LogOmegaObjective obj{rho_, sigma_, alpha_, is_alpha_one(alpha_)};
    return obj.eval(h.matrix(), nullptr);
}

HermitianOperator MeasuredObjective::gradient(const HermitianOperator& h) const {
    detail::LogOmegaObjective obj{rho_, sigma_, alpha_, is_alpha_one(alpha_)};
    ComplexMatrix g;
    obj.eval(h.matrix(), &g);
    return hermitian_unchecked(std::move(g));
}

HermitianOperator sandwiched_sigma_gradient(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("sandwiched_sigma_gradient: dimensions differ");
    if (!(alpha > 0.0) || std::isinf(alpha)) throw DomainError("sandwiched gradient needs finite alpha > 0");
    auto es = detail::eig(sigma.matrix());
    if (es.w.minCoeff() < detail::supp_eps(es.w)) throw DomainError("sandwiched gradient needs full-rank sigma");
    ComplexMatrix g;
    detail::sandwiched_with_gradient(rho.matrix(), sigma.matrix(), alpha, &g);
    return hermitian_unchecked(std::move(g));
}

}  // namespace qleak
