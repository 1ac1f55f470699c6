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

#include <cstdint>
#include <memory>
#include <mutex>

#include "qcomp/lattice.hpp"
#include "qcomp/pauli.hpp"

namespace qcomp {

/// Hermitian Pauli sum on a lattice. The dense matrix and its
/// eigendecomposition are computed on first use and then shared read-only.
class Hamiltonian {
public:
    Hamiltonian(PauliSum pauli, Lattice lattice);

    const PauliSum& pauli() const { return pauli_; }
    const Lattice& lattice() const { return lattice_; }
    int n_qubits() const { return lattice_.n_sites(); }

    const DenseOperator& dense() const;
    const DenseVector<Real>& eigenvalues() const;
    const DenseOperator& eigenvectors() const;

    /// Same lattice, coefficients multiplied by s.
    Hamiltonian scaled(Real s) const;

private:
    struct Cache {
        std::once_flag dense_once, eig_once;
        DenseOperator dense;
        DenseVector<Real> evals;
        DenseOperator evecs;
    };
    void require_dense() const;

    PauliSum pauli_;
    Lattice lattice_;
    std::shared_ptr<Cache> cache_;
};

/// Sum over bonds of XX + YY + ZZ plus sum over sites of 3X - Y + Z.
Hamiltonian heisenberg_field(const Lattice& lattice);

/// One uniform[-1,1] coefficient per (class, two-body sector P_a Q_b) and per
/// single-site sector, rescaled so that spectral_norm equals target_norm.
Hamiltonian random_two_local_ti(const Lattice& lattice, std::uint64_t seed, Real target_norm = 1.0);

/// True iff all bonds of each class carry identical coefficients per sector
/// and all sites carry identical single-site coefficients.
bool is_translation_invariant(const Hamiltonian& h, Real tol = 1e-12);

/// Largest |eigenvalue| of the dense matrix (n <= 12).
Real spectral_norm(const Hamiltonian& h);
/// Largest |eigenvalue| of a Hermitian matrix.
Real spectral_norm_hermitian(const DenseOperator& h);
/// Spectral norm of a small Hermitian gate generator.
Real spectral_norm_hermitian(const Gate& h);

/// exp(-i H t) through the cached eigendecomposition.
DenseOperator exact_propagator(const Hamiltonian& h, Real t);

/// True iff every eigenphase psi of u satisfies |psi| <= pi - margin.
bool principal_log_ok(const DenseOperator& u, Real margin);

}  // namespace qcomp
