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

// Raw spectral calculus on Eigen matrices that are Hermitian by construction.
// Hot paths in the solvers use these instead of the validated wrapper types.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "qleak/hermlin.hpp"

namespace qleak::detail {

using RealMatrix = Eigen::MatrixXd;

struct Eig {
    RealVector w;
    ComplexMatrix U;
};

inline ComplexMatrix herm(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

inline Eig eig(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm(m));
    return {es.eigenvalues(), es.eigenvectors()};
}

inline double supp_eps(const RealVector& w) {
    double top = w.size() > 0 ? w.maxCoeff() : 0.0;
    return kSupportRelEps * (top > 0.0 ? top : 1.0);
}

inline ComplexMatrix compose(const Eig& e, const RealVector& fw) {
    return e.U * fw.asDiagonal() * e.U.adjoint();
}

template <class F>
ComplexMatrix apply(const Eig& e, F f) {
    RealVector fw(e.w.size());
    for (Eigen::Index i = 0; i < e.w.size(); ++i) fw(i) = f(e.w(i));
    return compose(e, fw);
}

/// lambda^p on the support, 0 on the kernel.
inline ComplexMatrix power_on_support(const Eig& e, double p) {
    const double eps = supp_eps(e.w);
    return apply(e, [&](double x) { return x < eps ? 0.0 : std::pow(x, p); });
}

inline ComplexMatrix log_on_support(const Eig& e) {
    const double eps = supp_eps(e.w);
    return apply(e, [&](double x) { return x < eps ? 0.0 : std::log(x); });
}

inline ComplexMatrix support_projection(const Eig& e) {
    const double eps = supp_eps(e.w);
    return apply(e, [&](double x) { return x < eps ? 0.0 : 1.0; });
}

/// Divided differences of g(h) = exp(c h - shift).
inline RealMatrix dd_exp(const RealVector& h, double c, double shift) {
    const Eigen::Index n = h.size();
    RealMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double d = h(i) - h(j);
            const double base = std::exp(c * h(j) - shift);
            if (std::abs(c * d) < 1e-300) {
                g(i, j) = c * base;
            } else if (std::abs(d) < 1e-14) {
                g(i, j) = c * base * (1.0 + 0.5 * c * d);
            } else {
                g(i, j) = base * std::expm1(c * d) / d;
            }
        }
    }
    return g;
}

/// Divided differences of s -> s^p on strictly positive s.
inline RealMatrix dd_power(const RealVector& s, double p) {
    const Eigen::Index n = s.size();
    RealMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double L = std::log(s(i) / s(j));
            const double base = std::pow(s(j), p - 1.0);
            if (std::abs(L) < 1e-14) {
                g(i, j) = p * base * (1.0 + 0.5 * (p - 1.0) * L);
            } else {
                g(i, j) = base * std::expm1(p * L) / std::expm1(L);
            }
        }
    }
    return g;
}

/// Divided differences of log on strictly positive s.
inline RealMatrix dd_log(const RealVector& s) {
    const Eigen::Index n = s.size();
    RealMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double L = std::log(s(i) / s(j));
            if (std::abs(L) < 1e-14) {
                g(i, j) = (1.0 - 0.5 * L) / s(j);
            } else {
                g(i, j) = L / (s(j) * std::expm1(L));
            }
        }
    }
    return g;
}

/// Gradient of X -> Tr[A f(X)] at X = U diag(w) U^dagger given the
/// divided-difference matrix of f: U (Gamma o U^dagger A U) U^dagger.
inline ComplexMatrix frechet_gradient(const Eig& e, const RealMatrix& gamma, const ComplexMatrix& a) {
    ComplexMatrix t = e.U.adjoint() * a * e.U;
    t = t.cwiseProduct(gamma.cast<Complex>());
    return herm(e.U * t * e.U.adjoint());
}

/// Real inner product Re Tr[A^dagger B] on Hermitian matrices.
inline double inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.adjoint().cwiseProduct(b.transpose())).sum().real();
}

/// Hermitian d x d matrix <-> R^{d^2} coordinates (diagonal, then Re/Im of the
/// strict upper triangle). Coordinates are orthonormal for Re Tr[A B]
/// after the sqrt(2) scaling of off-diagonal parts.
inline RealVector to_coords(const ComplexMatrix& m) {
    const Eigen::Index d = m.rows();
    RealVector x(d * d);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d; ++i) x(k++) = m(i, i).real();
    const double s = std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            x(k++) = s * m(i, j).real();
            x(k++) = s * m(i, j).imag();
        }
    }
    return x;
}

inline ComplexMatrix from_coords(const RealVector& x, Eigen::Index d) {
    ComplexMatrix m(d, d);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) = x(k++);
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            const double re = s * x(k++);
            const double im = s * x(k++);
            m(i, j) = Complex(re, im);
            m(j, i) = Complex(re, -im);
        }
    }
    return m;
}

/// Index clusters of an ascending spectrum under an absolute tolerance.
inline std::vector<std::vector<Eigen::Index>> clusters(const RealVector& w, double tol) {
    std::vector<std::vector<Eigen::Index>> out;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (out.empty() || w(i) - w(out.back().back()) > tol)
            out.push_back({i});
        else
            out.back().push_back(i);
    }
    return out;
}

/// Orthonormal basis diagonalizing `a` in which `b` is block-diagonalized
/// along the clusters of `a` (a joint eigenbasis when a and b commute).
inline ComplexMatrix joint_basis(const ComplexMatrix& a, const ComplexMatrix& b) {
    Eig ea = eig(a);
    ComplexMatrix U = ea.U;
    for (const auto& c : clusters(ea.w, kSpecClusterTol)) {
        if (c.size() < 2) continue;
        const Eigen::Index n = static_cast<Eigen::Index>(c.size());
        ComplexMatrix V(a.rows(), n);
        for (Eigen::Index k = 0; k < n; ++k) V.col(k) = ea.U.col(c[k]);
        Eig eb = eig(V.adjoint() * b * V);
        ComplexMatrix W = V * eb.U;
        for (Eigen::Index k = 0; k < n; ++k) U.col(c[k]) = W.col(k);
    }
    return U;
}

}  // namespace qleak::detail
