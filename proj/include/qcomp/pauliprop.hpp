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

#include <cstddef>
#include <optional>
#include <vector>

#include "qcomp/circuit.hpp"
#include "qcomp/pauli.hpp"

namespace qcomp {

struct PropagationConfig {
    /// Terms with |coeff| < kappa are dropped after every gate.
    Real kappa = 0.0;
    std::optional<std::size_t> max_terms;
};

/// Heisenberg image U^dagger O U for U = ops[M-1] ... ops[0], conjugating
/// gate by gate from the last gate backwards.
PauliSum propagate(const PauliSum& observable, const std::vector<GateOp>& ops, const PropagationConfig& config = {});
PauliSum propagate(const PauliString& observable, const std::vector<GateOp>& ops,
                   const PropagationConfig& config = {});

/// Hilbert-Schmidt overlap Tr(A^dagger B) / 2^N = sum conj(a_P) b_P (real part).
Real overlap(const PauliSum& a, const PauliSum& b);

/// Pauli expansion of a dense operator (n <= 8).
PauliSum pauli_decompose(const DenseOperator& m, int n_qubits, Real dust = 1e-14);

/// Images of X_i, Y_i, Z_i (site-major) under the circuit, computed on
/// `threads` workers.
std::vector<PauliSum> weight_one_images(const std::vector<GateOp>& ops, int n_qubits, const PropagationConfig& config,
                                        int threads = 1);
/// Same images for a dense unitary.
std::vector<PauliSum> weight_one_images(const DenseOperator& u, int n_qubits);

struct LocalInfidelity {
    Real c1loc = 0.0;
    Real i_loc = 0.0;
    /// 1 - (1/3) sum_sigma overlap at each site.
    std::vector<Real> per_site;
    std::size_t max_terms = 0;
    std::size_t total_terms = 0;
};

/// C1loc = 1/2 - (1/(6N)) sum_{i,sigma} overlap and I_loc = 2N (2^N/(2^N+1)) C1loc.
LocalInfidelity local_infidelity(const std::vector<PauliSum>& target_images, const std::vector<PauliSum>& approx_images,
                                 int n_qubits);
LocalInfidelity local_infidelity(const std::vector<GateOp>& target, const std::vector<GateOp>& approx, int n_qubits,
                                 const PropagationConfig& config, int threads = 1);

}  // namespace qcomp
