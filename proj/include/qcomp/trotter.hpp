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

#include <optional>
#include <vector>

#include "qcomp/circuit.hpp"
#include "qcomp/hamiltonian.hpp"
#include "qcomp/pauli.hpp"

namespace qcomp {

/// One sub-Hamiltonian H_i^(a) of a partition together with a Pauli string
/// K that anticommutes with each of its terms.
struct PartitionPart {
    enum class Kind { Bond, Field, Class };
    Kind kind = Kind::Bond;
    /// Bond parts: sigma of sigma_a sigma_b. Field parts: sigma of sigma_i.
    char letter = 'X';
    /// Common coefficient of every term.
    Real coeff = 1.0;
    /// Class of a bond part; -1 for field parts.
    int class_index = -1;
    PauliSum h;
    /// Anticommuting string; absent when no single-layer string exists.
    std::optional<PauliString> k;
    /// Class parts: two-qubit generator applied on every bond of the class.
    Gate generator = Gate::Zero();
};

struct Partition {
    Hamiltonian hamiltonian;
    std::vector<PartitionPart> parts;

    const Lattice& lattice() const { return hamiltonian.lattice(); }
    PauliSum sum() const;
};

/// XX, YY, ZZ bond sectors split per class (class-major), then the -Y, Z and
/// 3X field sectors. Bond K strings carry Z, X, Y on the first site of every
/// bond of the class; field strings are X on all sites (Y, Z sectors) and Z on
/// all sites (X sector). Throws unless h equals heisenberg_field(lattice).
Partition hm_partition(const Hamiltonian& h);

/// One part per class: every two-body term of the class plus each site field
/// divided by the site degree (see class_generators). Parts carry no K
/// strings, so only uncontrolled circuits can be built from it.
Partition class_partition(const Hamiltonian& h);

/// p = 1 / (4 - 4^(1/3)) of the fourth-order Suzuki recursion.
Real suzuki_p();

/// Product formula of order 1, 2 (Strang) or 4 (Suzuki) with `steps` steps.
/// Consecutive layers on the same single-permutation class are merged and
/// field rotations are fused into neighbouring perfect-matching layers. When
/// `controlled`, each exponential is wrapped by controlled K layers, so that
/// the reduced branch approximates exp(-iHt) and the full branch exp(+iHt).
Ansatz trotter_circuit(const Partition& partition, Real t, int order, int steps, bool controlled = false);

/// Per-class two-qubit generators h_a: the two-body terms on a representative
/// bond of class a plus each site field divided by the site degree.
/// Requires a translationally invariant Hamiltonian on a regular lattice.
std::vector<Gate> class_generators(const Hamiltonian& h);

/// First-order warm start exp(-i (dt/s) h_a) with s = floor(budget / classes),
/// identity padding up to `layer_budget` uncontrolled layers, and
/// `controlled_layers` identity control layers spread evenly.
Ansatz trotter_init_point(const Hamiltonian& h, Real dt, int layer_budget, int controlled_layers = 0);
Ansatz trotter_init_point(const Partition& partition, Real dt, int layer_budget, int controlled_layers = 0);

}  // namespace qcomp
