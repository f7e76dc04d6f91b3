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

#include "qleak/hermlin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail/spectral.hpp"

namespace qleak {

namespace {

void require_square_finite(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionMismatch("matrix must be square and non-empty, got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    if (!m.allFinite()) throw NonFinite("matrix has a NaN or infinite entry");
}

void require_same_dim(int a, int b, const char* what) {
    if (a != b)
        throw DimensionMismatch(std::string(what) + ": dimensions differ (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m) {
    require_square_finite(m);
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
        throw NonHermitian("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
    m_ = detail::herm(m);
}

HermitianOperator hermitian_unchecked(ComplexMatrix m) {
    return HermitianOperator(detail::herm(m), HermitianOperator::Trusted{});
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(ComplexMatrix::Identity(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::zero(int dim) {
    return HermitianOperator(ComplexMatrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> entries) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(entries.size()),
                                          static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
    require_same_dim(dim(), o.dim(), "operator+");
    return HermitianOperator(m_ + o.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
    require_same_dim(dim(), o.dim(), "operator-");
    return HermitianOperator(m_ - o.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(m_ * s, Trusted{}); }

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
    const double tr = op_.trace();
    if (std::abs(tr - 1.0) > kUnitTraceTol)
        throw NotDensityMatrix("trace is " + std::to_string(tr) + ", expected 1");
    const double lo = detail::eig(op_.matrix()).w.minCoeff();
    if (lo < -kPsdFloor) throw NotDensityMatrix("negative eigenvalue " + std::to_string(lo));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw NotDensityMatrix("zero vector");
    ComplexVector v = psi / n;
    return DensityMatrix(hermitian_unchecked(v * v.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(hermitian_unchecked(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
    return DensityMatrix(HermitianOperator::diagonal(probabilities));
}

Povm::Povm(std::vector<HermitianOperator> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvalidPovm("POVM has no elements");
    const int d = elements_.front().dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        require_same_dim(d, elements_[i].dim(), "Povm");
        const double lo = detail::eig(elements_[i].matrix()).w.minCoeff();
        if (lo < -kPsdFloor)
            throw InvalidPovm("element " + std::to_string(i) + " has negative eigenvalue " + std::to_string(lo));
        sum += elements_[i].matrix();
    }
    const double dev = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kUnitTraceTol) throw InvalidPovm("elements sum to identity only within " + std::to_string(dev));
}

Povm Povm::computational_basis(int dim) {
    std::vector<HermitianOperator> el;
    for (int i = 0; i < dim; ++i) {
        ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
        m(i, i) = 1.0;
        el.emplace_back(std::move(m));
    }
    return Povm(std::move(el));
}

Eigensystem eigh(const HermitianOperator& op) {
    auto e = detail::eig(op.matrix());
    return {std::move(e.w), std::move(e.U)};
}

double support_eps(const RealVector& eigenvalues) { return detail::supp_eps(eigenvalues); }

namespace {

detail::Eig checked_psd_eig(const HermitianOperator& op) {
    auto e = detail::eig(op.matrix());
    const double eps = detail::supp_eps(e.w);
    if (e.w.minCoeff() < -eps)
        throw NegativeEigenvalue("eigenvalue " + std::to_string(e.w.minCoeff()) + " below -supportEps");
    return e;
}

}  // namespace

HermitianOperator matrix_power_on_support(const HermitianOperator& op, double exponent) {
    if (!std::isfinite(exponent)) throw DomainError("exponent must be finite");
    return hermitian_unchecked(detail::power_on_support(checked_psd_eig(op), exponent));
}

HermitianOperator matrix_log_on_support(const HermitianOperator& op) {
    return hermitian_unchecked(detail::log_on_support(checked_psd_eig(op)));
}

HermitianOperator matrix_exp(const HermitianOperator& op) {
    return hermitian_unchecked(detail::apply(detail::eig(op.matrix()), [](double x) { return std::exp(x); }));
}

HermitianOperator support_projector(const HermitianOperator& op) {
    return hermitian_unchecked(detail::support_projection(checked_psd_eig(op)));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    return hermitian_unchecked(kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.op(), b.op()));
}

HermitianOperator partial_trace_classical(std::span<const CqBlock> blocks, KeepFactor keep) {
    if (blocks.empty()) throw DimensionMismatch("partial_trace_classical: no blocks");
    const int d = blocks.front().op.dim();
    for (const auto& b : blocks) require_same_dim(d, b.op.dim(), "partial_trace_classical");
    if (keep == KeepFactor::Quantum) {
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (const auto& b : blocks) sum += b.weight * b.op.matrix();
        return hermitian_unchecked(std::move(sum));
    }
    std::vector<double> diag;
    diag.reserve(blocks.size());
    for (const auto& b : blocks) diag.push_back(b.weight * b.op.trace());
    return HermitianOperator::diagonal(diag);
}

DensityMatrix pinch(const DensityMatrix& state, const HermitianOperator& anchor) {
    require_same_dim(state.dim(), anchor.dim(), "pinch");
    auto e = detail::eig(anchor.matrix());
    ComplexMatrix out = ComplexMatrix::Zero(state.dim(), state.dim());
    for (const auto& c : detail::clusters(e.w, kSpecClusterTol)) {
        ComplexMatrix V(state.dim(), static_cast<Eigen::Index>(c.size()));
        for (std::size_t k = 0; k < c.size(); ++k) V.col(static_cast<Eigen::Index>(k)) = e.U.col(c[k]);
        ComplexMatrix P = V * V.adjoint();
        out += P * state.matrix() * P;
    }
    return DensityMatrix(hermitian_unchecked(std::move(out)));
}

int spectrum_count(const HermitianOperator& op) {
    return static_cast<int>(detail::clusters(detail::eig(op.matrix()).w, kSpecClusterTol).size());
}

DensityMatrix kraus_apply(const DensityMatrix& state, std::span<const ComplexMatrix> kraus) {
    if (kraus.empty()) throw NotTracePreserving("empty Kraus set");
    const Eigen::Index d = state.dim();
    const Eigen::Index out_dim = kraus.front().rows();
    ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
    for (const auto& k : kraus) {
        if (k.cols() != d || k.rows() != out_dim) throw DimensionMismatch("kraus_apply: Kraus operator shape");
        completeness += k.adjoint() * k;
    }
    const double dev = (completeness - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kUnitTraceTol) throw NotTracePreserving("sum K^dagger K deviates from I by " + std::to_string(dev));
    ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
    for (const auto& k : kraus) out += k * state.matrix() * k.adjoint();
    return DensityMatrix(hermitian_unchecked(std::move(out)));
}

double trace_norm(const HermitianOperator& op) { return detail::eig(op.matrix()).w.cwiseAbs().sum(); }

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) { return (a * b - b * a).norm(); }

}  // namespace qleak
