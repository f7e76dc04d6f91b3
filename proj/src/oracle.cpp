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

#include "qleak/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "qleak/qdiv.hpp"

namespace qleak::oracle {

namespace {

constexpr double kInfO = std::numeric_limits<double>::infinity();
constexpr double kZeroMass = 1e-12;

void require_qubit(int dim, const char* what) {
    if (dim != 2) throw DimensionNot2(std::string(what) + " needs qubit operators, got dimension " + std::to_string(dim));
}

void require_alpha(double alpha) {
    if (std::isnan(alpha) || alpha < 0.0) throw DomainError("alpha must be in [0, inf]");
}

// Orthonormal basis (columns) with Bloch angles theta, phi for the first vector.
ComplexMatrix bloch_basis(double theta, double phi) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const Complex e = std::polar(1.0, phi);
    ComplexMatrix u(2, 2);
    u << c, -std::conj(e) * s, e * s, c;
    return u;
}

std::vector<double> diagonal_in(const ComplexMatrix& u, const ComplexMatrix& m) {
    std::vector<double> d(static_cast<std::size_t>(u.cols()));
    for (Eigen::Index i = 0; i < u.cols(); ++i) d[i] = std::max(0.0, (u.col(i).adjoint() * m * u.col(i))(0, 0).real());
    return d;
}

ComplexMatrix eigenbasis(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    return es.eigenvectors();
}

// Classical channel W[x][y] = <e_y| rho^x |e_y> in a common eigenbasis.
struct ClassicalModel {
    std::vector<double> p;
    std::vector<std::vector<double>> w;
};

ClassicalModel classical_model(const CQState& ens) {
    for (std::size_t x = 0; x < ens.size(); ++x)
        for (std::size_t y = x + 1; y < ens.size(); ++y)
            if (commutator_norm(ens.states()[x].matrix(), ens.states()[y].matrix()) > 1e-10)
                throw NotCommuting("states '" + ens.labels()[x] + "' and '" + ens.labels()[y] + "' do not commute");
    // a generic combination separates every joint eigenspace
    ComplexMatrix mix = ComplexMatrix::Zero(ens.dim(), ens.dim());
    for (std::size_t x = 0; x < ens.size(); ++x) mix += (1.0 / (static_cast<double>(x) + std::numbers::sqrt2)) * ens.states()[x].matrix();
    const ComplexMatrix u = eigenbasis(mix);
    ClassicalModel m;
    m.p = ens.prior().mass();
    for (const auto& s : ens.states()) {
        std::vector<double> row = diagonal_in(u, s.matrix());
        for (double& v : row)
            if (v <= kZeroMass) v = 0.0;
        double t = 0.0;
        for (double v : row) t += v;
        for (double& v : row) v /= t;
        m.w.push_back(std::move(row));
    }
    return m;
}

double arimoto_conditional(const ClassicalModel& m, double alpha) {
    const std::size_t ny = m.w.front().size();
    double acc = 0.0;
    if (alpha == 0.0) {
        double top = 0.0;
        for (std::size_t y = 0; y < ny; ++y) {
            double n = 0.0;
            for (std::size_t x = 0; x < m.p.size(); ++x)
                if (m.p[x] * m.w[x][y] > 0.0) n += 1.0;
            top = std::max(top, n);
        }
        return std::log(top);
    }
    for (std::size_t y = 0; y < ny; ++y) {
        if (std::isinf(alpha)) {
            double best = 0.0;
            for (std::size_t x = 0; x < m.p.size(); ++x) best = std::max(best, m.p[x] * m.w[x][y]);
            acc += best;
        } else if (is_alpha_one(alpha)) {
            double py = 0.0;
            for (std::size_t x = 0; x < m.p.size(); ++x) py += m.p[x] * m.w[x][y];
            for (std::size_t x = 0; x < m.p.size(); ++x) {
                const double j = m.p[x] * m.w[x][y];
                if (j > 0.0) acc -= j * std::log(j / py);
            }
        } else {
            double s = 0.0;
            for (std::size_t x = 0; x < m.p.size(); ++x) {
                const double j = m.p[x] * m.w[x][y];
                if (j > 0.0) s += std::pow(j, alpha);
            }
            acc += std::pow(s, 1.0 / alpha);
        }
    }
    if (std::isinf(alpha)) return -std::log(acc);
    if (is_alpha_one(alpha)) return acc;
    return alpha / (1.0 - alpha) * std::log(acc);
}

double sibson(const std::vector<double>& p, const std::vector<std::vector<double>>& w, double alpha) {
    const std::size_t ny = w.front().size();
    if (alpha == 0.0) {
        double top = 0.0;
        for (std::size_t y = 0; y < ny; ++y) {
            double s = 0.0;
            for (std::size_t x = 0; x < p.size(); ++x)
                if (w[x][y] > 0.0) s += p[x];
            top = std::max(top, s);
        }
        return -std::log(top);
    }
    double acc = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
        if (std::isinf(alpha)) {
            double best = 0.0;
            for (std::size_t x = 0; x < p.size(); ++x)
                if (p[x] > 0.0) best = std::max(best, w[x][y]);
            acc += best;
        } else if (is_alpha_one(alpha)) {
            double qy = 0.0;
            for (std::size_t x = 0; x < p.size(); ++x) qy += p[x] * w[x][y];
            for (std::size_t x = 0; x < p.size(); ++x)
                if (p[x] * w[x][y] > 0.0) acc += p[x] * w[x][y] * std::log(w[x][y] / qy);
        } else {
            double s = 0.0;
            for (std::size_t x = 0; x < p.size(); ++x)
                if (w[x][y] > 0.0) s += p[x] * std::pow(w[x][y], alpha);
            acc += std::pow(s, 1.0 / alpha);
        }
    }
    if (std::isinf(alpha)) return std::log(acc);
    if (is_alpha_one(alpha)) return acc;
    return alpha / (alpha - 1.0) * std::log(acc);
}

// Optimal output distribution of the Sibson information at prior p.
std::vector<double> sibson_output(const std::vector<double>& p, const std::vector<std::vector<double>>& w,
                                  double alpha) {
    const std::size_t ny = w.front().size();
    std::vector<double> q(ny, 0.0);
    double t = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
        double s = 0.0;
        for (std::size_t x = 0; x < p.size(); ++x)
            s += is_alpha_one(alpha) ? p[x] * w[x][y] : (w[x][y] > 0.0 ? p[x] * std::pow(w[x][y], alpha) : 0.0);
        q[y] = is_alpha_one(alpha) ? s : std::pow(s, 1.0 / alpha);
        t += q[y];
    }
    for (double& v : q) v /= t;
    return q;
}

// Damped Blahut-Arimoto-type iteration; the value is certified against
// min over iterates of max_x D(W_x || q*).
double classical_capacity(const ClassicalModel& full, double alpha) {
    if (alpha == 0.0) throw DomainError("classical oracle: order-0 capacity is not computed");
    std::vector<std::vector<double>> w;
    for (std::size_t x = 0; x < full.p.size(); ++x)
        if (full.p[x] > kZeroMass) w.push_back(full.w[x]);
    const std::size_t m = w.size();
    if (std::isinf(alpha)) return sibson(std::vector<double>(m, 1.0 / static_cast<double>(m)), w, alpha);
    std::vector<double> p(m, 1.0 / static_cast<double>(m));
    double value = sibson(p, w, alpha);
    double upper = kInfO;
    double eta = 1.0;
    for (int it = 0; it < 200000 && m > 1; ++it) {
        const std::vector<double> q = sibson_output(p, w, alpha);
        std::vector<double> d(m);
        for (std::size_t x = 0; x < m; ++x) d[x] = classical::divergence(w[x], q, alpha);
        const double dmax = *std::max_element(d.begin(), d.end());
        upper = std::min(upper, dmax);
        if (upper - value <= 1e-11) break;
        std::vector<double> trial(m);
        double s = 0.0;
        for (std::size_t x = 0; x < m; ++x) s += trial[x] = p[x] * std::exp(eta * (d[x] - dmax));
        for (double& v : trial) v /= s;
        const double tv = sibson(trial, w, alpha);
        if (tv >= value) {
            p = std::move(trial);
            value = tv;
            eta = std::min(eta * 1.2, 1e4);
        } else {
            eta *= 0.5;
            if (eta < 1e-14) break;
        }
    }
    return value;
}

// Maximizes f(theta, phi) by a shrinking 5x5 stencil around (t, p); returns the best value seen.
template <class F>
double pattern_search(F f, double t, double p, double ht, double hp, double best) {
    for (int round = 0; round < 40; ++round) {
        double nt = t, np = p;
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b) {
                const double v = f(t + 0.5 * a * ht, p + 0.5 * b * hp);
                if (v > best) {
                    best = v;
                    nt = t + 0.5 * a * ht;
                    np = p + 0.5 * b * hp;
                }
            }
        t = nt;
        p = np;
        ht *= 0.5;
        hp *= 0.5;
    }
    return best;
}

}  // namespace

double helstrom_guess(const Distribution& p, const DensityMatrix& rho0, const DensityMatrix& rho1) {
    if (p.size() != 2) throw ArityMismatch("helstrom_guess needs a binary prior");
    if (rho0.dim() != rho1.dim()) throw DimensionMismatch("helstrom_guess: states differ in dimension");
    const ComplexMatrix d = p[0] * rho0.matrix() - p[1] * rho1.matrix();
    return 0.5 * (1.0 + trace_norm(hermitian_unchecked(d)));
}

Povm bloch_measurement(double theta, double phi) {
    const ComplexMatrix u = bloch_basis(theta, phi);
    return Povm({hermitian_unchecked(u.col(0) * u.col(0).adjoint()), hermitian_unchecked(u.col(1) * u.col(1).adjoint())});
}

double grid_measured_divergence(const DensityMatrix& rho, const HermitianOperator& sigma, double alpha,
                                int resolution, bool refine) {
    require_qubit(rho.dim(), "grid_measured_divergence");
    require_qubit(sigma.dim(), "grid_measured_divergence");
    require_alpha(alpha);
    if (resolution < 64) throw DomainError("grid_measured_divergence: resolution must be at least 64");
    auto divergence_in = [&](const ComplexMatrix& u) {
        return classical::divergence(diagonal_in(u, rho.matrix()), diagonal_in(u, sigma.matrix()), alpha);
    };
    double best = 0.0;  // the trivial measurement
    best = std::max(best, divergence_in(eigenbasis(rho.matrix())));
    best = std::max(best, divergence_in(eigenbasis(sigma.matrix())));
    const double pi = std::numbers::pi;
    double bt = 0.0, bp = 0.0, gridBest = -1.0;
    for (int k = 0; k <= resolution; ++k)
        for (int j = 0; j < resolution; ++j) {
            const double t = k * pi / resolution, ph = 2.0 * j * pi / resolution;
            const double v = divergence_in(bloch_basis(t, ph));
            if (v > gridBest) {
                gridBest = v;
                bt = t;
                bp = ph;
            }
        }
    best = std::max(best, gridBest);
    if (refine && std::isfinite(best))
        best = std::max(best, pattern_search([&](double t, double ph) { return divergence_in(bloch_basis(t, ph)); }, bt,
                                             bp, pi / resolution, 2.0 * pi / resolution, gridBest));
    return best;
}

double grid_radius(const CQState& channel, double alpha, int resolution, const SolverConfig& cfg) {
    require_qubit(channel.dim(), "grid_radius");
    require_alpha(alpha);
    if (resolution < 2) throw DomainError("grid_radius: resolution must be at least 2");
    std::vector<const DensityMatrix*> states;
    ComplexMatrix bary = ComplexMatrix::Zero(2, 2);
    double mass = 0.0;
    for (std::size_t x = 0; x < channel.size(); ++x)
        if (channel.prior()[x] > kZeroMass) {
            states.push_back(&channel.states()[x]);
            bary += channel.prior()[x] * channel.states()[x].matrix();
            mass += channel.prior()[x];
        }
    double best = kInfO;
    auto consider = [&](const ComplexMatrix& s) {
        const HermitianOperator sigma = hermitian_unchecked(s);
        double worst = 0.0;
        for (const DensityMatrix* r : states) {
            worst = std::max(worst, measured(*r, sigma, alpha, cfg).value.value());
            if (worst >= best) return;
        }
        best = worst;
    };
    consider(bary / mass);
    const ComplexMatrix px = (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished();
    const ComplexMatrix py = (ComplexMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    const ComplexMatrix pz = (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished();
    for (int i = 0; i <= resolution; ++i)
        for (int j = 0; j <= resolution; ++j)
            for (int k = 0; k <= resolution; ++k) {
                const double rx = -1.0 + 2.0 * i / resolution;
                const double ry = -1.0 + 2.0 * j / resolution;
                const double rz = -1.0 + 2.0 * k / resolution;
                if (rx * rx + ry * ry + rz * rz > 1.0 + 1e-12) continue;
                consider(0.5 * (ComplexMatrix::Identity(2, 2) + rx * px + ry * py + rz * pz));
            }
    return best;
}

double grid_alpha_gain(const CQState& ens, double alpha, int resolution) {
    require_qubit(ens.dim(), "grid_alpha_gain");
    if (std::isnan(alpha) || alpha < 1.0) throw DomainError("grid_alpha_gain: alpha must be in [1, inf]");
    if (resolution < 1) throw DomainError("grid_alpha_gain: resolution must be positive");
    // Per basis vector i the best outcome assignment gives (sum_x c_xi^alpha)^(1/alpha).
    auto gain = [&](double theta, double phi) {
        const ComplexMatrix u = bloch_basis(theta, phi);
        double g = 0.0;
        for (Eigen::Index i = 0; i < 2; ++i) {
            double s = 0.0, top = 0.0;
            for (std::size_t x = 0; x < ens.size(); ++x) {
                const double c = ens.prior()[x] *
                                 std::max(0.0, (u.col(i).adjoint() * ens.states()[x].matrix() * u.col(i))(0, 0).real());
                top = std::max(top, c);
                s += std::isinf(alpha) ? 0.0 : std::pow(c, alpha);
            }
            g += std::isinf(alpha) ? top : std::pow(s, 1.0 / alpha);
        }
        return g;
    };
    const double pi = std::numbers::pi;
    double best = -1.0, bt = 0.0, bp = 0.0;
    for (int k = 0; k <= resolution; ++k)
        for (int j = 0; j < resolution; ++j) {
            const double t = k * pi / resolution, ph = 2.0 * j * pi / resolution;
            const double g = gain(t, ph);
            if (g > best) {
                best = g;
                bt = t;
                bp = ph;
            }
        }
    return pattern_search(gain, bt, bp, pi / resolution, 2.0 * pi / resolution, best);
}

double classical_exhaustive(const CQState& ens, Quantity quantity, double alpha) {
    require_alpha(alpha);
    const ClassicalModel m = classical_model(ens);
    switch (quantity) {
        case Quantity::Divergence:
            if (ens.size() < 2) throw ArityMismatch("classical divergence needs two states");
            return classical::divergence(m.w[0], m.w[1], alpha);
        case Quantity::ConditionalEntropy:
            return arimoto_conditional(m, alpha);
        case Quantity::ArimotoInformation:
            return renyi_entropy(ens.prior(), alpha) - arimoto_conditional(m, alpha);
        case Quantity::RenyiInformation:
            return sibson(m.p, m.w, alpha);
        case Quantity::Capacity:
            return classical_capacity(m, alpha);
    }
    throw DomainError("unknown quantity");
}

}  // namespace qleak::oracle
