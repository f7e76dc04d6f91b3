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

#include "qleak/leakcore.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "detail/prior.hpp"
#include "detail/sdp.hpp"
#include "detail/state_opt.hpp"

namespace qleak {

namespace {

using detail::BlockDivergences;
using detail::Flavor;

constexpr double kDropMass = 1e-12;
constexpr int kCapacityRounds = 200;
constexpr double kCapacityGapStop = 1e-7;
constexpr double kRadiusTauMin = 1e-4;
constexpr double kMomentum = 0.85;

void require_alpha(double alpha) {
    if (std::isnan(alpha) || alpha < 0.0) throw DomainError("alpha must be in [0, inf]");
}

void require_leakage_alpha(double alpha, const char* what) {
    if (std::isnan(alpha) || alpha < 1.0)
        throw DomainError(std::string(what) + " is defined for alpha in [1, inf]");
}

void require_sandwiched_alpha(double alpha) {
    require_alpha(alpha);
    if (alpha == 0.0) throw DomainError("sandwiched quantities are defined here for alpha > 0");
}

// Symbols kept for a computation, with their states compressed to the joint support.
struct Reduced {
    std::vector<std::size_t> index;
    std::vector<double> p;
    std::vector<ComplexMatrix> states;
    ComplexMatrix v;  // joint-support basis, columns in the full space

    ComplexMatrix barycenter(const std::vector<double>& w) const {
        ComplexMatrix s = ComplexMatrix::Zero(v.cols(), v.cols());
        double t = 0.0;
        for (std::size_t i = 0; i < states.size(); ++i) {
            s += w[i] * states[i];
            t += w[i];
        }
        return detail::herm(s / t);
    }
    ComplexMatrix uniform_barycenter() const { return barycenter(std::vector<double>(states.size(), 1.0)); }
    DensityMatrix embed(const ComplexMatrix& sigma) const {
        return DensityMatrix(hermitian_unchecked(v * sigma * v.adjoint()));
    }
};

Reduced reduce(const CQState& ens, double threshold) {
    Reduced r;
    std::vector<ComplexMatrix> full;
    for (std::size_t x = 0; x < ens.size(); ++x) {
        if (ens.prior()[x] > threshold) {
            r.index.push_back(x);
            r.p.push_back(ens.prior()[x]);
            full.push_back(ens.states()[x].matrix());
        }
    }
    r.v = detail::joint_support(full);
    for (const auto& s : full) r.states.push_back(detail::herm(r.v.adjoint() * s * r.v));
    return r;
}

// Identical states count once in a max over symbols; keeps smoothing weights honest.
void merge_duplicates(Reduced& r) {
    Reduced out;
    out.v = r.v;
    for (std::size_t i = 0; i < r.states.size(); ++i) {
        std::size_t j = 0;
        while (j < out.states.size() && (out.states[j] - r.states[i]).cwiseAbs().maxCoeff() > 1e-14) ++j;
        if (j == out.states.size()) {
            out.index.push_back(r.index[i]);
            out.p.push_back(r.p[i]);
            out.states.push_back(r.states[i]);
        } else {
            out.p[j] += r.p[i];
        }
    }
    r = std::move(out);
}

std::vector<double> logs(const std::vector<double>& w, double power = 1.0) {
    std::vector<double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = power * std::log(std::max(w[i], 1e-300));
    return out;
}

LeakageResult make(double value, double alpha) {
    LeakageResult r;
    r.value = ExtReal(value);
    r.alpha = alpha;
    return r;
}

Distribution prior_on(const CQState& ens, const Reduced& r, const std::vector<double>& p) {
    std::vector<double> mass(ens.size(), 0.0);
    double s = 0.0;
    for (double v : p) s += v;
    for (std::size_t i = 0; i < r.index.size(); ++i) mass[r.index[i]] = p[i] / s;
    return Distribution(ens.labels(), std::move(mass));
}

// Sum of support projectors sum_x w_x P_x on the reduced space.
ComplexMatrix projector_sum(const Reduced& r, const std::vector<double>& w) {
    ComplexMatrix s = ComplexMatrix::Zero(r.v.cols(), r.v.cols());
    for (std::size_t i = 0; i < r.states.size(); ++i) s += w[i] * detail::support_projection(detail::eig(r.states[i]));
    return detail::herm(s);
}

// Top eigenvector state of a Hermitian matrix, with its eigenvalue.
std::pair<double, ComplexMatrix> top_state(const ComplexMatrix& m) {
    detail::Eig e = detail::eig(m);
    const Eigen::Index k = e.w.size() - 1;
    return {e.w(k), e.U.col(k) * e.U.col(k).adjoint()};
}

detail::DominatingTrace dominating(const Reduced& r, const std::vector<double>& w) {
    std::vector<ComplexMatrix> a;
    for (std::size_t i = 0; i < r.states.size(); ++i) a.push_back(w[i] * r.states[i]);
    return detail::min_trace_dominating(a);
}

void attach_sdp(LeakageResult& out, const detail::DominatingTrace& t, const Reduced& r) {
    out.report.iterations = t.iterations;
    out.report.converged = t.converged;
    out.report.residual = t.gap;
    out.optimizerState = r.embed(t.y / t.value);
}

//--------------------------------------------------------------------- conditional entropy / information

LeakageResult conditional_entropy(const CQState& ens, double alpha, Flavor flavor, const SolverConfig& cfg) {
    Reduced r = reduce(ens, 0.0);
    if (std::isinf(alpha)) {
        detail::DominatingTrace t = dominating(r, r.p);
        LeakageResult out = make(-std::log(t.value), alpha);
        attach_sdp(out, t, r);
        return out;
    }
    if (alpha == 0.0) {
        auto [top, state] = top_state(projector_sum(r, std::vector<double>(r.states.size(), 1.0)));
        LeakageResult out = make(std::log(top), alpha);
        out.optimizerState = r.embed(state);
        return out;
    }
    BlockDivergences blocks(r.states, alpha, flavor, cfg);
    const bool one = is_alpha_one(alpha);
    detail::WeightedMin w = detail::weighted_min(blocks, logs(r.p, one ? 1.0 : alpha), r.barycenter(r.p), cfg);
    const double h = one ? renyi_entropy(ens.prior(), 1.0) - w.value : -w.value;
    LeakageResult out = make(h, alpha);
    out.report = w.report;
    out.report.residual = w.gap;
    out.optimizerState = r.embed(w.sigma);
    return out;
}

LeakageResult renyi_information(const CQState& ens, double alpha, Flavor flavor, const SolverConfig& cfg) {
    Reduced r = reduce(ens, 0.0);
    if (std::isinf(alpha)) {
        detail::DominatingTrace t = dominating(r, std::vector<double>(r.states.size(), 1.0));
        LeakageResult out = make(std::log(t.value), alpha);
        attach_sdp(out, t, r);
        return out;
    }
    if (alpha == 0.0) {
        auto [top, state] = top_state(projector_sum(r, r.p));
        LeakageResult out = make(-std::log(top), alpha);
        out.optimizerState = r.embed(state);
        return out;
    }
    BlockDivergences blocks(r.states, alpha, flavor, cfg);
    detail::WeightedMin w = detail::weighted_min(blocks, logs(r.p), r.barycenter(r.p), cfg);
    LeakageResult out = make(w.value, alpha);
    out.report = w.report;
    out.report.residual = w.gap;
    out.optimizerState = r.embed(w.sigma);
    return out;
}

LeakageResult arimoto_information(const CQState& ens, double alpha, Flavor flavor, const SolverConfig& cfg) {
    LeakageResult h = conditional_entropy(ens, alpha, flavor, cfg);
    h.value = ExtReal(renyi_entropy(ens.prior(), alpha) - h.value.value());
    return h;
}

//--------------------------------------------------------------------- radius and capacities

LeakageResult radius(const CQState& channel, double alpha, Flavor flavor, const SolverConfig& cfg) {
    Reduced r = reduce(channel, kDropMass);
    merge_duplicates(r);
    const ComplexMatrix bary = r.uniform_barycenter();
    const Eigen::Index k = r.v.cols();
    // the smoothed optimum can sit slightly above an exactly optimal symmetric point
    const std::vector<ComplexMatrix> anchors = {bary, r.barycenter(r.p),
                                                ComplexMatrix::Identity(k, k) / static_cast<double>(k)};
    detail::WeightedMin w;
    std::vector<double> anchorValues;
    if (std::isinf(alpha)) {
        w = detail::smoothed_dmax_radius(r.states, bary, cfg, kRadiusTauMin);
        for (const auto& a : anchors) {
            double v = 0.0;
            for (const auto& st : r.states) v = std::max(v, detail::dmax_value(st, a));
            anchorValues.push_back(v);
        }
    } else {
        BlockDivergences blocks(r.states, alpha, flavor, cfg);
        w = detail::smoothed_radius(blocks, bary, cfg, kRadiusTauMin);
        std::vector<double> d;
        for (const auto& a : anchors) {
            blocks.eval(a, d, nullptr);
            anchorValues.push_back(*std::max_element(d.begin(), d.end()));
        }
    }
    for (std::size_t i = 0; i < anchors.size(); ++i)
        if (anchorValues[i] < w.value) {
            w.value = anchorValues[i];
            w.sigma = anchors[i];
        }
    LeakageResult out = make(w.value, alpha);
    out.report = w.report;
    out.optimizerState = r.embed(w.sigma);
    return out;
}

using detail::PriorEval;
using detail::PriorFunction;

struct PriorAscent {
    double value;
    double gap;
    std::vector<double> p;
    ComplexMatrix sigma;
    SolveReport report;
};

// Exponentiated-gradient ascent on the simplex with adaptive step; the gap is
// the best upper bound seen minus the best value.
PriorAscent prior_ascent(const PriorFunction& f, std::size_t m, const ComplexMatrix& sigma0) {
    std::vector<double> p(m, 1.0 / static_cast<double>(m));
    PriorEval e = f(p, sigma0);
    SolveReport rep = e.report;
    double upper = e.upper;
    double eta = 1.0;
    std::vector<double> u(m, 0.0);  // heavy-ball direction in log coordinates
    int round = 0;
    while (round < kCapacityRounds && upper - e.value > kCapacityGapStop && m > 1) {
        ++round;
        std::vector<double> dir(m);
        for (std::size_t i = 0; i < m; ++i) dir[i] = e.grad[i] + kMomentum * u[i];
        const double dmax = *std::max_element(dir.begin(), dir.end());
        std::vector<double> q(m);
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            q[i] = p[i] * std::exp(eta * (dir[i] - dmax));
            s += q[i];
        }
        for (double& v : q) v = std::max(v / s, 1e-300);
        PriorEval t = f(q, e.sigma);
        rep.absorb(t.report);
        upper = std::min(upper, t.upper);
        if (t.value >= e.value - 1e-15) {
            p = std::move(q);
            e = std::move(t);
            u = std::move(dir);
            eta = std::min(1.25 * eta, 1e6);
        } else {
            std::fill(u.begin(), u.end(), 0.0);
            eta *= 0.5;
            if (eta < 1e-12) break;
        }
    }
    const double gap = std::max(0.0, upper - e.value);
    rep.iterations += round;
    rep.restarts = 0;
    rep.residual = gap;
    rep.converged = e.report.converged && gap <= kCapacityGapStop;
    return {e.value, gap, std::move(p), std::move(e.sigma), rep};
}

// p with p^alpha proportional to t.
std::vector<double> untilt(const std::vector<double>& t, double alpha) {
    std::vector<double> p(t.size());
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += p[i] = std::pow(t[i], 1.0 / alpha);
    for (double& v : p) v = std::max(v / s, 1e-300);
    return p;
}

}  // namespace

namespace detail {

PriorFunction renyi_prior_function(BlockDivergences& blocks, double alpha, const SolverConfig& cfg) {
    return [&blocks, alpha, cfg](const std::vector<double>& p, const ComplexMatrix& warm) {
        detail::WeightedMin w = detail::weighted_min(blocks, logs(p), warm, cfg);
        PriorEval e;
        e.value = w.value;
        e.upper = *std::max_element(w.d.begin(), w.d.end());
        e.grad.resize(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            e.grad[i] = is_alpha_one(alpha) ? w.d[i] - w.value
                                            : std::expm1((alpha - 1.0) * (w.d[i] - w.value)) / (alpha - 1.0);
        e.sigma = std::move(w.sigma);
        e.report = w.report;
        return e;
    };
}

// Ascent variable is the tilted prior t; the Arimoto information of p(t) is
// evaluated from its definition, H_alpha(p) - H^M_alpha(X|B).
PriorFunction arimoto_prior_function(BlockDivergences& blocks, double alpha, const SolverConfig& cfg) {
    // no tilt at alpha = 1, and both informations are the mutual information
    if (is_alpha_one(alpha)) return renyi_prior_function(blocks, alpha, cfg);
    return [&blocks, alpha, cfg](const std::vector<double>& t, const ComplexMatrix& warm) {
        const std::vector<double> p = untilt(t, alpha);
        const std::vector<double> lw = logs(p, alpha);
        detail::WeightedMin w = detail::weighted_min(blocks, lw, warm, cfg);
        const std::vector<double> zero(p.size(), 0.0);
        PriorEval e;
        e.value = detail::log_sum_exp(zero, lw, 1.0, nullptr) / (1.0 - alpha) + w.value;
        e.upper = *std::max_element(w.d.begin(), w.d.end());
        e.grad.resize(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) e.grad[i] = std::expm1((alpha - 1.0) * (w.d[i] - e.value)) / (alpha - 1.0);
        e.sigma = std::move(w.sigma);
        e.report = w.report;
        return e;
    };
}

}  // namespace detail

namespace {

using detail::arimoto_prior_function;
using detail::renyi_prior_function;

// Order-0 Renyi capacity: -log min_p lambda_max(sum_x p_x P_x), by smoothing lambda_max.
LeakageResult order_zero_capacity(const CQState& channel) {
    Reduced r = reduce(channel, kDropMass);
    const std::size_t m = r.states.size();
    std::vector<ComplexMatrix> proj;
    for (const auto& s : r.states) proj.push_back(detail::support_projection(detail::eig(s)));
    std::vector<double> p(m, 1.0 / static_cast<double>(m));
    auto pencil = [&](const std::vector<double>& w) {
        ComplexMatrix a = ComplexMatrix::Zero(r.v.cols(), r.v.cols());
        for (std::size_t i = 0; i < m; ++i) a += w[i] * proj[i];
        return detail::herm(a);
    };
    double bestLower = -std::log(top_state(pencil(p)).first);
    std::vector<double> bestP = p;
    double bestUpper = detail::kInfD;
    ComplexMatrix bestSigma;
    int iterations = 0;
    for (double mu = 0.1; mu >= 1e-7; mu *= 0.5) {
        double eta = 1.0;
        for (int it = 0; it < 200; ++it, ++iterations) {
            detail::Eig e = detail::eig(pencil(p));
            const ComplexMatrix sigma = detail::compose(e, ((e.w.array() - e.w.maxCoeff()) / mu).exp().matrix());
            const ComplexMatrix st = sigma / sigma.trace().real();
            std::vector<double> g(m);
            double minq = detail::kInfD;
            for (std::size_t i = 0; i < m; ++i) {
                g[i] = detail::inner(st, proj[i]);
                minq = std::min(minq, g[i]);
            }
            if (minq > 0.0 && -std::log(minq) < bestUpper) {
                bestUpper = -std::log(minq);
                bestSigma = st;
            }
            auto smooth = [&](const std::vector<double>& w) {
                detail::Eig ew = detail::eig(pencil(w));
                const double top = ew.w.maxCoeff();
                return top + mu * std::log(((ew.w.array() - top) / mu).exp().sum());
            };
            const double f0 = smooth(p);
            std::vector<double> q(m);
            for (int ls = 0; ls < 40; ++ls) {
                double s = 0.0;
                const double gmin = *std::min_element(g.begin(), g.end());
                for (std::size_t i = 0; i < m; ++i) {
                    q[i] = p[i] * std::exp(-eta * (g[i] - gmin) / mu);
                    s += q[i];
                }
                for (double& v : q) v /= s;
                if (smooth(q) <= f0) break;
                eta *= 0.5;
            }
            p = q;
            eta = std::min(2.0 * eta, 1e3);
            const double lower = -std::log(top_state(pencil(p)).first);
            if (lower > bestLower) {
                bestLower = lower;
                bestP = p;
            }
            if (bestUpper - bestLower <= kCapacityGapStop) break;
        }
        if (bestUpper - bestLower <= kCapacityGapStop) break;
    }
    LeakageResult out = make(bestLower, 0.0);
    out.report.iterations = iterations;
    out.report.residual = std::max(0.0, bestUpper - bestLower);
    out.report.converged = out.report.residual <= kCapacityGapStop;
    out.optimizerPrior = prior_on(channel, r, bestP);
    if (bestSigma.size() > 0) out.optimizerState = r.embed(bestSigma);
    return out;
}

LeakageResult capacity(const CQState& channel, double alpha, Flavor flavor, const SolverConfig& cfg) {
    Reduced r = reduce(channel, kDropMass);
    const std::size_t m = r.states.size();
    if (std::isinf(alpha)) {
        detail::DominatingTrace t = dominating(r, std::vector<double>(m, 1.0));
        LeakageResult out = make(std::log(t.value), alpha);
        attach_sdp(out, t, r);
        out.optimizerPrior = prior_on(channel, r, std::vector<double>(m, 1.0));
        return out;
    }
    if (alpha == 0.0) return order_zero_capacity(channel);
    BlockDivergences blocks(r.states, alpha, flavor, cfg);
    PriorAscent a = prior_ascent(renyi_prior_function(blocks, alpha, cfg), m, r.uniform_barycenter());
    LeakageResult out = make(a.value, alpha);
    out.report = a.report;
    out.optimizerPrior = prior_on(channel, r, a.p);
    out.optimizerState = r.embed(a.sigma);
    return out;
}

LeakageResult arimoto_capacity_impl(const CQState& channel, double alpha, Flavor flavor, const SolverConfig& cfg) {
    if (is_alpha_one(alpha)) return capacity(channel, alpha, flavor, cfg);
    Reduced r = reduce(channel, kDropMass);
    const std::size_t m = r.states.size();
    if (std::isinf(alpha)) {
        // H_inf(uniform) - H_inf(X|B) at the uniform prior attains the order-inf capacity
        detail::DominatingTrace t = dominating(r, std::vector<double>(m, 1.0 / static_cast<double>(m)));
        LeakageResult out = make(std::log(static_cast<double>(m)) + std::log(t.value), alpha);
        attach_sdp(out, t, r);
        out.optimizerPrior = prior_on(channel, r, std::vector<double>(m, 1.0));
        return out;
    }
    if (alpha == 0.0) {
        if (m > 20) throw DimensionTooLarge("order-0 Arimoto capacity enumerates supports; alphabet too large");
        double best = -detail::kInfD;
        std::vector<double> bestMask;
        for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
            std::vector<double> w(m, 0.0);
            double k = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (1UL << i)) {
                    w[i] = 1.0;
                    k += 1.0;
                }
            const double v = std::log(k) - std::log(top_state(projector_sum(r, w)).first);
            if (v > best) {
                best = v;
                bestMask = w;
            }
        }
        LeakageResult out = make(best, alpha);
        out.optimizerPrior = prior_on(channel, r, bestMask);
        return out;
    }
    BlockDivergences blocks(r.states, alpha, flavor, cfg);
    PriorAscent a = prior_ascent(arimoto_prior_function(blocks, alpha, cfg), m, r.uniform_barycenter());
    LeakageResult out = make(a.value, alpha);
    out.report = a.report;
    out.optimizerPrior = prior_on(channel, r, untilt(a.p, alpha));
    out.optimizerState = r.embed(a.sigma);
    return out;
}

CapacityTriple triple(const CQState& channel, double alpha, Flavor flavor, const SolverConfig& cfg) {
    CapacityTriple t{capacity(channel, alpha, flavor, cfg), arimoto_capacity_impl(channel, alpha, flavor, cfg),
                     radius(channel, alpha, flavor, cfg)};
    t.capacityRadiusGap = std::abs(t.capacity.value.value() - t.radius.value.value());
    t.capacityArimotoGap = std::abs(t.capacity.value.value() - t.arimotoCapacity.value.value());
    t.capacity.crossCheckGap = std::max(t.capacityRadiusGap, t.capacityArimotoGap);
    return t;
}

}  // namespace

//--------------------------------------------------------------------- CQState

CQState::CQState(Distribution prior, std::vector<DensityMatrix> states)
    : prior_(std::move(prior)), states_(std::move(states)) {
    if (states_.size() != prior_.size())
        throw ArityMismatch("prior has " + std::to_string(prior_.size()) + " symbols but " +
                            std::to_string(states_.size()) + " states were given");
    for (std::size_t x = 0; x < states_.size(); ++x)
        if (states_[x].dim() != states_.front().dim())
            throw DimensionMismatch("state '" + prior_.labels()[x] + "' has dimension " +
                                    std::to_string(states_[x].dim()) + ", expected " +
                                    std::to_string(states_.front().dim()));
}

const DensityMatrix& CQState::state(const std::string& label) const {
    const auto& l = labels();
    auto it = std::find(l.begin(), l.end(), label);
    if (it == l.end()) throw LabelMismatch("no symbol '" + label + "'");
    return states_[static_cast<std::size_t>(it - l.begin())];
}

CQState CQState::with_prior(Distribution prior) const {
    if (prior.labels() != labels()) throw LabelMismatch("with_prior: label sets differ");
    return CQState(std::move(prior), states_);
}

CQState CQState::apply_channel(std::span<const ComplexMatrix> kraus) const {
    std::vector<DensityMatrix> out;
    for (const auto& s : states_) out.push_back(kraus_apply(s, kraus));
    return CQState(prior_, std::move(out));
}

CQState product_mechanism(const CQState& a, const CQState& b) {
    if (a.labels() != b.labels()) throw LabelMismatch("product_mechanism: alphabets differ");
    if (a.prior().mass() != b.prior().mass()) throw InvalidDistribution("product_mechanism: priors differ");
    std::vector<DensityMatrix> s;
    for (std::size_t x = 0; x < a.size(); ++x) s.push_back(tensor(a.states()[x], b.states()[x]));
    return CQState(a.prior(), std::move(s));
}

CQState tensor_power_channel(const CQState& channel, int n) {
    if (n < 1) throw DomainError("tensor power must be positive");
    std::vector<std::string> labels = channel.labels();
    std::vector<double> mass = channel.prior().mass();
    std::vector<DensityMatrix> states = channel.states();
    for (int k = 1; k < n; ++k) {
        std::vector<std::string> nl;
        std::vector<double> nm;
        std::vector<DensityMatrix> ns;
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (std::size_t j = 0; j < channel.size(); ++j) {
                nl.push_back(labels[i] + "|" + channel.labels()[j]);
                nm.push_back(mass[i] * channel.prior()[j]);
                ns.push_back(tensor(states[i], channel.states()[j]));
            }
        labels = std::move(nl);
        mass = std::move(nm);
        states = std::move(ns);
    }
    double s = 0.0;
    for (double v : mass) s += v;
    for (double& v : mass) v /= s;
    return CQState(Distribution(std::move(labels), std::move(mass)), std::move(states));
}

//--------------------------------------------------------------------- public operations

LeakageResult measured_conditional_entropy(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_alpha(alpha);
    return conditional_entropy(ens, alpha, Flavor::Measured, cfg);
}

LeakageResult max_expected_alpha_gain(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_leakage_alpha(alpha, "maximal expected alpha-gain");
    LeakageResult h = measured_conditional_entropy(ens, alpha, cfg);
    double gain;
    if (std::isinf(alpha))
        gain = std::exp(-h.value.value());
    else if (is_alpha_one(alpha))
        gain = 1.0;
    else
        gain = std::exp((1.0 - alpha) / alpha * h.value.value());
    h.value = ExtReal(gain);
    return h;
}

LeakageResult min_expected_alpha_loss(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_leakage_alpha(alpha, "minimal expected alpha-loss");
    if (is_alpha_one(alpha)) return measured_conditional_entropy(ens, 1.0, cfg);
    LeakageResult g = max_expected_alpha_gain(ens, alpha, cfg);
    const double p = g.value.value();
    g.value = ExtReal(std::isinf(alpha) ? 1.0 - p : alpha / (alpha - 1.0) * (1.0 - p));
    return g;
}

double expected_alpha_gain_of_povm(const CQState& ens, const Povm& povm, double alpha) {
    require_leakage_alpha(alpha, "expected alpha-gain");
    if (povm.size() != ens.size())
        throw ArityMismatch("POVM has " + std::to_string(povm.size()) + " outcomes for " + std::to_string(ens.size()) +
                            " symbols");
    if (povm.dim() != ens.dim()) throw DimensionMismatch("POVM dimension differs from the states");
    const double e = std::isinf(alpha) ? 1.0 : (is_alpha_one(alpha) ? 0.0 : (alpha - 1.0) / alpha);
    double g = 0.0;
    for (std::size_t x = 0; x < ens.size(); ++x) {
        if (ens.prior()[x] == 0.0) continue;
        const HermitianOperator pw = e == 0.0 ? support_projector(povm[x]) : matrix_power_on_support(povm[x], e);
        g += ens.prior()[x] * detail::inner(ens.states()[x].matrix(), pw.matrix());
    }
    return g;
}

LeakageResult alpha_leakage(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_leakage_alpha(alpha, "alpha-leakage");
    LeakageResult h = measured_conditional_entropy(ens, alpha, cfg);
    const double hx = renyi_entropy(ens.prior(), alpha);
    const double value = hx - h.value.value();
    if (!is_alpha_one(alpha)) {
        // gain-ratio form (alpha/(alpha-1)) log(P_alpha(X|B) / P_alpha(X))
        const double u = unconditional_alpha_gain(ens.prior(), alpha);
        double ratio;
        if (std::isinf(alpha)) {
            ratio = std::log(std::exp(-h.value.value()) / u);
        } else {
            const double pb = std::exp((1.0 - alpha) / alpha * h.value.value());
            ratio = alpha / (alpha - 1.0) * std::log(pb / u);
        }
        h.crossCheckGap = std::abs(ratio - value);
    }
    h.value = ExtReal(value);
    return h;
}

LeakageResult measured_renyi_information(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_alpha(alpha);
    return renyi_information(ens, alpha, Flavor::Measured, cfg);
}

LeakageResult measured_arimoto_information(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_alpha(alpha);
    return arimoto_information(ens, alpha, Flavor::Measured, cfg);
}

LeakageResult divergence_radius(const CQState& channel, double alpha, const SolverConfig& cfg) {
    require_alpha(alpha);
    return radius(channel, alpha, Flavor::Measured, cfg);
}

LeakageResult measured_capacity(const CQState& channel, double alpha, const SolverConfig& cfg) {
    require_alpha(alpha);
    return capacity(channel, alpha, Flavor::Measured, cfg);
}

LeakageResult arimoto_capacity(const CQState& channel, double alpha, const SolverConfig& cfg) {
    require_alpha(alpha);
    return arimoto_capacity_impl(channel, alpha, Flavor::Measured, cfg);
}

CapacityTriple measured_capacity_triple(const CQState& channel, double alpha, const SolverConfig& cfg) {
    require_alpha(alpha);
    return triple(channel, alpha, Flavor::Measured, cfg);
}

LeakageResult maximal_alpha_leakage(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_leakage_alpha(alpha, "maximal alpha-leakage");
    if (is_alpha_one(alpha)) return measured_arimoto_information(ens, 1.0, cfg);
    return measured_capacity(ens, alpha, cfg);
}

double composition_gap(const CQState& ensAB, const CQState& ens1, const CQState& ens2, double alpha,
                       const SolverConfig& cfg) {
    require_leakage_alpha(alpha, "maximal alpha-leakage");
    if (ensAB.labels() != ens1.labels() || ensAB.labels() != ens2.labels())
        throw LabelMismatch("composition_gap: alphabets differ");
    if (ensAB.prior().mass() != ens1.prior().mass() || ensAB.prior().mass() != ens2.prior().mass())
        throw InvalidDistribution("composition_gap: priors differ");
    if (ensAB.dim() != ens1.dim() * ens2.dim())
        throw DimensionMismatch("composition_gap: joint dimension is not the product of the marginal dimensions");
    const double a = maximal_alpha_leakage(ens1, alpha, cfg).value.value();
    const double b = maximal_alpha_leakage(ens2, alpha, cfg).value.value();
    const double ab = maximal_alpha_leakage(ensAB, alpha, cfg).value.value();
    return a + b - ab;
}

LeakageResult sandwiched_conditional_entropy(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_sandwiched_alpha(alpha);
    return conditional_entropy(ens, alpha, Flavor::Sandwiched, cfg);
}

LeakageResult sandwiched_information(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_sandwiched_alpha(alpha);
    return renyi_information(ens, alpha, Flavor::Sandwiched, cfg);
}

LeakageResult sandwiched_arimoto_information(const CQState& ens, double alpha, const SolverConfig& cfg) {
    require_sandwiched_alpha(alpha);
    return arimoto_information(ens, alpha, Flavor::Sandwiched, cfg);
}

CapacityTriple sandwiched_capacity_radius(const CQState& channel, double alpha, const SolverConfig& cfg) {
    require_sandwiched_alpha(alpha);
    return triple(channel, alpha, Flavor::Sandwiched, cfg);
}

}  // namespace qleak
