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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qleak/errors.hpp"

namespace qleak {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues below kSupportRelEps * max(largest eigenvalue, 1 if all zero) are kernel.
inline constexpr double kSupportRelEps = 1e-12;
/// Absolute gap under which two eigenvalues belong to the same spectral cluster.
inline constexpr double kSpecClusterTol = 1e-9;
/// Eigenvalue floor for positive semi-definiteness checks.
inline constexpr double kPsdFloor = 1e-10;
/// Trace and completeness tolerance for states and measurements.
inline constexpr double kUnitTraceTol = 1e-10;

/// Square complex matrix certified Hermitian with
/// max_ij |M_ij - conj(M_ji)| <= 1e-12 (1 + max |M|). Stored exactly Hermitian.
class HermitianOperator {
public:
    explicit HermitianOperator(ComplexMatrix m);

    static HermitianOperator identity(int dim);
    static HermitianOperator zero(int dim);
    static HermitianOperator diagonal(std::span<const double> entries);

    int dim() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix& matrix() const { return m_; }
    double trace() const { return m_.trace().real(); }

    HermitianOperator operator+(const HermitianOperator& o) const;
    HermitianOperator operator-(const HermitianOperator& o) const;
    HermitianOperator operator*(double s) const;

private:
    struct Trusted {};
    HermitianOperator(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
    friend HermitianOperator hermitian_unchecked(ComplexMatrix m);

    ComplexMatrix m_;
};

/// Hermitian part of `m` wrapped without validation. For results of
/// internal spectral calculus that are Hermitian by construction.
HermitianOperator hermitian_unchecked(ComplexMatrix m);

/// Positive semi-definite (eigenvalues >= -1e-10), unit-trace operator.
class DensityMatrix {
public:
    explicit DensityMatrix(HermitianOperator op);
    explicit DensityMatrix(ComplexMatrix m) : DensityMatrix(HermitianOperator(std::move(m))) {}

    static DensityMatrix pure(const ComplexVector& psi);
    static DensityMatrix maximally_mixed(int dim);
    static DensityMatrix diagonal(std::span<const double> probabilities);

    int dim() const { return op_.dim(); }
    const HermitianOperator& op() const { return op_; }
    const ComplexMatrix& matrix() const { return op_.matrix(); }

private:
    HermitianOperator op_;
};

/// Finite list of PSD operators summing to the identity within 1e-10 entrywise.
class Povm {
public:
    explicit Povm(std::vector<HermitianOperator> elements);

    static Povm computational_basis(int dim);

    std::size_t size() const { return elements_.size(); }
    int dim() const { return elements_.front().dim(); }
    const HermitianOperator& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<HermitianOperator>& elements() const { return elements_; }

private:
    std::vector<HermitianOperator> elements_;
};

struct Eigensystem {
    RealVector values;     // ascending
    ComplexMatrix vectors;  // columns are orthonormal eigenvectors
};

Eigensystem eigh(const HermitianOperator& op);

/// Kernel threshold for a spectrum: kSupportRelEps * (largest eigenvalue, or 1 if none positive).
double support_eps(const RealVector& eigenvalues);

HermitianOperator matrix_power_on_support(const HermitianOperator& op, double exponent);
HermitianOperator matrix_log_on_support(const HermitianOperator& op);
HermitianOperator matrix_exp(const HermitianOperator& op);
HermitianOperator support_projector(const HermitianOperator& op);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// One block of sum_x |x><x| (x) (weight * op).
struct CqBlock {
    double weight;
    HermitianOperator op;
};

enum class KeepFactor { Quantum, Classical };

/// Trace out X (KeepFactor::Quantum: sum_x w_x A_x) or B
/// (KeepFactor::Classical: diag(w_x Tr A_x)).
HermitianOperator partial_trace_classical(std::span<const CqBlock> blocks, KeepFactor keep);

/// Dephase `state` in the eigen-projections of `anchor` (clusters under kSpecClusterTol).
DensityMatrix pinch(const DensityMatrix& state, const HermitianOperator& anchor);

/// Number of distinct eigenvalues (clusters under kSpecClusterTol).
int spectrum_count(const HermitianOperator& op);

/// Sum_k K rho K^dagger; requires sum_k K^dagger K = I within 1e-10.
DensityMatrix kraus_apply(const DensityMatrix& state, std::span<const ComplexMatrix> kraus);

double trace_norm(const HermitianOperator& op);

/// Frobenius norm of the commutator [a, b].
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qleak
