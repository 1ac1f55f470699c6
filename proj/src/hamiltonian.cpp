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

#include "qcomp/hamiltonian.hpp"

#include <array>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "qcomp/linalg.hpp"
#include "qcomp/rng.hpp"

namespace qcomp {

Hamiltonian::Hamiltonian(PauliSum pauli, Lattice lattice)
    : pauli_(std::move(pauli)), lattice_(std::move(lattice)), cache_(std::make_shared<Cache>()) {
    if (pauli_.n_qubits() != lattice_.n_sites()) throw Error("Hamiltonian width does not match lattice site count");
    if (!pauli_.is_hermitian()) throw Error("Hamiltonian coefficients must be real");
}

void Hamiltonian::require_dense() const {
    if (n_qubits() > kMaxDenseQubits) {
        throw Error("dense Hamiltonian limited to " + std::to_string(kMaxDenseQubits) +
                    " qubits; use Pauli propagation or a norm bound for larger systems");
    }
}

const DenseOperator& Hamiltonian::dense() const {
    require_dense();
    std::call_once(cache_->dense_once, [this] { cache_->dense = pauli_.to_dense(); });
    return cache_->dense;
}

const DenseVector<Real>& Hamiltonian::eigenvalues() const {
    const DenseOperator& m = dense();
    std::call_once(cache_->eig_once, [this, &m] {
        Eigen::SelfAdjointEigenSolver<DenseOperator> es(m);
        if (es.info() != Eigen::Success) throw NumericalError("Hamiltonian eigendecomposition failed");
        cache_->evals = es.eigenvalues();
        cache_->evecs = es.eigenvectors();
    });
    return cache_->evals;
}

const DenseOperator& Hamiltonian::eigenvectors() const {
    eigenvalues();
    return cache_->evecs;
}

Hamiltonian Hamiltonian::scaled(Real s) const { return Hamiltonian(Complex{s} * pauli_, lattice_); }

Hamiltonian heisenberg_field(const Lattice& lat) {
    const int n = lat.n_sites();
    PauliSum h(n);
    for (const auto& b : lat.all_bonds()) {
        for (char p : {'X', 'Y', 'Z'}) h.add(PauliString(n).with_letter(b.a, p).with_letter(b.b, p), 1.0);
    }
    for (int i = 0; i < n; ++i) {
        h.add(PauliString::single(n, i, 'X'), 3.0);
        h.add(PauliString::single(n, i, 'Y'), -1.0);
        h.add(PauliString::single(n, i, 'Z'), 1.0);
    }
    return Hamiltonian(std::move(h), lat);
}

Hamiltonian random_two_local_ti(const Lattice& lat, std::uint64_t seed, Real target_norm) {
    if (!(target_norm > 0)) throw Error("target norm must be positive");
    const int n = lat.n_sites();
    Rng rng(seed);
    std::uniform_real_distribution<Real> uni(-1.0, 1.0);
    static constexpr char kLetters[3] = {'X', 'Y', 'Z'};
    PauliSum h(n);
    for (const auto& cls : lat.classes()) {
        std::array<Real, 9> coeff;
        for (auto& c : coeff) c = uni(rng);
        for (const auto& b : cls.bonds()) {
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q)
                    h.add(PauliString(n).with_letter(b.a, kLetters[p]).with_letter(b.b, kLetters[q]), coeff[3 * p + q]);
        }
    }
    std::array<Real, 3> field;
    for (auto& c : field) c = uni(rng);
    for (int i = 0; i < n; ++i)
        for (int p = 0; p < 3; ++p) h.add(PauliString::single(n, i, kLetters[p]), field[p]);
    Hamiltonian raw(std::move(h), lat);
    return raw.scaled(target_norm / spectral_norm(raw));
}

bool is_translation_invariant(const Hamiltonian& h, Real tol) {
    const int n = h.n_qubits();
    static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    for (const auto& cls : h.lattice().classes()) {
        const auto bonds = cls.bonds();
        for (int p = 1; p < 4; ++p)
            for (int q = 1; q < 4; ++q) {
                const auto at = [&](const Bond& b) {
                    return h.pauli().coefficient(PauliString(n).with_letter(b.a, kLetters[p]).with_letter(b.b, kLetters[q]));
                };
                const Complex ref = at(bonds.front());
                for (const auto& b : bonds)
                    if (std::abs(at(b) - ref) > tol) return false;
            }
    }
    for (int p = 1; p < 4; ++p) {
        const Complex ref = h.pauli().coefficient(PauliString::single(n, 0, kLetters[p]));
        for (int i = 1; i < n; ++i)
            if (std::abs(h.pauli().coefficient(PauliString::single(n, i, kLetters[p])) - ref) > tol) return false;
    }
    return true;
}

Real spectral_norm(const Hamiltonian& h) { return h.eigenvalues().cwiseAbs().maxCoeff(); }

Real spectral_norm_hermitian(const DenseOperator& m) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue computation failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Real spectral_norm_hermitian(const Gate& m) {
    Eigen::SelfAdjointEigenSolver<Gate> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

DenseOperator exact_propagator(const Hamiltonian& h, Real t) {
    const auto& evals = h.eigenvalues();
    const auto& q = h.eigenvectors();
    const DenseVector<Complex> phases = (evals.cast<Complex>() * (-kI * t)).array().exp();
    return q * phases.asDiagonal() * q.adjoint();
}

bool principal_log_ok(const DenseOperator& u, Real margin) {
    const UnitarySpectrum sp = unitary_spectrum(u);
    return (sp.phases.array().abs() <= M_PI - margin).all();
}

}  // namespace qcomp
