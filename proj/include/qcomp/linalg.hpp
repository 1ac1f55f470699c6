// Copyright 2026 The qcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense helpers shared by all modules: unitarity checks, matrix
// exponential and principal logarithm of normal matrices, global-phase
// aligned distances.

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qcomp/types.hpp"

namespace qcomp {

template <typename Derived>
Real unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
    using Plain = typename Derived::PlainObject;
    Plain prod = u.adjoint() * u;
    return (prod - Plain::Identity(u.rows(), u.cols())).norm();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, Real tol) {
    return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

/// exp(-i * h * t) for Hermitian h via eigendecomposition.
template <typename Derived>
typename Derived::PlainObject expm_hermitian(const Eigen::MatrixBase<Derived>& h, Real t) {
    using Plain = typename Derived::PlainObject;
    Eigen::SelfAdjointEigenSolver<Plain> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    DenseVector<Complex> phases = (es.eigenvalues().template cast<Complex>() * (-kI * t)).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(a) for skew-Hermitian a (so that the result is exactly unitary).
template <typename Derived>
typename Derived::PlainObject expm_skew(const Eigen::MatrixBase<Derived>& a) {
    // a = -i h with h = i a Hermitian, exp(a) = exp(-i h).
    typename Derived::PlainObject h = kI * a;
    h = (0.5 * (h + h.adjoint())).eval();
    return expm_hermitian(h, 1.0);
}

/// Eigenphases (in (-pi, pi]) and Schur vectors of a unitary.
struct UnitarySpectrum {
    DenseVector<Real> phases;
    DenseOperator vectors;
};

template <typename Derived>
UnitarySpectrum unitary_spectrum(const Eigen::MatrixBase<Derived>& u) {
    Eigen::ComplexSchur<DenseOperator> schur(DenseOperator(u), true);
    if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
    const auto& t = schur.matrixT();
    UnitarySpectrum out;
    out.phases.resize(t.rows());
    for (Eigen::Index i = 0; i < t.rows(); ++i) out.phases(i) = std::arg(t(i, i));
    out.vectors = schur.matrixU();
    return out;
}

/// Principal logarithm of a unitary. Throws if an eigenvalue sits at -1
/// within `margin` radians.
template <typename Derived>
DenseOperator principal_log_unitary(const Eigen::MatrixBase<Derived>& u, Real margin = 0.0) {
    const UnitarySpectrum sp = unitary_spectrum(u);
    for (Eigen::Index i = 0; i < sp.phases.size(); ++i) {
        if (std::abs(sp.phases(i)) > M_PI - margin) {
            throw NumericalError("principal logarithm undefined: eigenvalue at -1");
        }
    }
    DenseVector<Complex> d = (kI * sp.phases.template cast<Complex>()).eval();
    return sp.vectors * d.asDiagonal() * sp.vectors.adjoint();
}

/// Frobenius distance after removing the optimal global phase between a and b.
template <typename DA, typename DB>
Real phase_aligned_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    const Complex overlap = (a.adjoint() * b).trace();
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0};
    return (a * phase - b).norm();
}

/// Rescale a unitary so that det == 1 (principal fourth root of the phase).
inline Gate su_normalize(const Gate& g) {
    const Complex det = g.determinant();
    return g * std::polar(1.0, -std::arg(det) / 4.0);
}

/// Traceless skew-Hermitian part: the projection onto su(n).
template <typename Derived>
typename Derived::PlainObject project_su(const Eigen::MatrixBase<Derived>& x) {
    using Plain = typename Derived::PlainObject;
    Plain s = 0.5 * (x - x.adjoint());
    const Complex tr = s.trace() / static_cast<Real>(s.rows());
    s.diagonal().array() -= tr;
    return s;
}

inline Mat2 pauli_matrix(char letter) {
    Mat2 m;
    switch (letter) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -kI, kI, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw Error(std::string("unknown Pauli letter ") + letter);
    }
    return m;
}

inline Gate kron(const Mat2& a, const Mat2& b) {
    Gate g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return g;
}

}  // namespace qcomp
