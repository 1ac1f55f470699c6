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

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcomp/lattice.hpp"
#include "qcomp/types.hpp"

namespace qcomp {

/// One translationally invariant layer: a shared gate on every bond of a class.
struct Layer {
    Gate gate = Gate::Identity();
    int class_index = 0;
    bool controlled = false;
    friend bool operator==(const Layer&, const Layer&) = default;
};

/// Which circuit a controlled ansatz stands for. `Reduced` skips the
/// controlled layers (ancilla 0), `Full` applies all of them (ancilla 1).
enum class Branch { Reduced, Full };

/// Layered circuit W_L(V) on a lattice. Gates are stored as SU(4) matrices.
class Ansatz {
public:
    Ansatz() = default;
    /// Validates class indices and unitarity (1e-10), then divides out det^(1/4).
    Ansatz(Lattice lattice, std::vector<Layer> layers);

    /// All-identity layers, one per class, repeated `blocks` times.
    static Ansatz identity(const Lattice& lattice, int blocks = 1);

    const Lattice& lattice() const { return lattice_; }
    const std::vector<Layer>& layers() const { return layers_; }
    const Layer& layer(int i) const { return layers_.at(static_cast<std::size_t>(i)); }
    int depth() const { return static_cast<int>(layers_.size()); }
    int n_system() const { return lattice_.n_sites(); }
    /// System qubits plus one ancilla when any layer is controlled.
    int n_qubits() const { return n_system() + (has_controls() ? 1 : 0); }
    int controlled_count() const;
    bool has_controls() const { return controlled_count() > 0; }

    /// Replaces one gate (re-normalized to det 1).
    void set_gate(int layer, const Gate& gate);
    /// Circuit with the controlled layers removed.
    Ansatz reduced() const;
    /// Same gates with every control flag cleared.
    Ansatz uncontrolled() const;

    /// Repetition bookkeeping: the circuit is `repetitions` copies of a block
    /// of `block_depth` layers (L / block_depth == t / dt).
    int repetitions() const { return repetitions_; }
    int block_depth() const { return block_depth_; }
    void set_block_info(int repetitions, int block_depth);

    friend bool operator==(const Ansatz&, const Ansatz&) = default;

private:
    Lattice lattice_;
    std::vector<Layer> layers_;
    int repetitions_ = 1;
    int block_depth_ = 0;
};

/// One bond-level gate instance, in time order.
struct GateOp {
    Gate gate;
    int a = 0;
    int b = 0;
    int layer = 0;
    bool controlled = false;
};

std::vector<GateOp> gate_ops(const Ansatz& ansatz, Branch branch = Branch::Full);

struct StateVector {
    int n_qubits = 0;
    Amplitudes amplitudes;

    StateVector() = default;
    StateVector(int n, Amplitudes amps);
    /// Computational basis state; qubit 0 is the most significant bit.
    static StateVector basis(int n, std::size_t index);
    Real norm() const { return amplitudes.norm(); }
};

// Kernels. Qubit q of an n-qubit register sits at bit (n - 1 - q).
void apply_gate(Complex* amps, int n, const Gate& g, int a, int b);
void apply_gate(Amplitudes& v, int n, const Gate& g, int a, int b);
/// m <- G_ab * m
void apply_gate_left(DenseOperator& m, int n, const Gate& g, int a, int b);
/// m <- m * G_ab
void apply_gate_right(DenseOperator& m, int n, const Gate& g, int a, int b);
/// E with E(q,p) = sum_r X((q,r),(p,r)), so Tr(X G_ab) = Tr(E g).
Gate partial_trace_pair(const DenseOperator& x, int n, int a, int b);
/// partial_trace_pair(phi * chi^dagger) without forming the outer product.
Gate partial_trace_outer(const Amplitudes& phi, const Amplitudes& chi, int n, int a, int b);

/// Applies the circuit. For controlled circuits the ancilla bit selects the
/// branch (1 fires the controlled layers) and must be given.
StateVector apply(const Ansatz& ansatz, const StateVector& state, std::optional<int> ancilla = std::nullopt);
/// Applies the controlled circuit to n_system + 1 qubits, ancilla as the
/// most significant bit.
StateVector apply_controlled(const Ansatz& ansatz, const StateVector& state);
void apply_ops(const std::vector<GateOp>& ops, Amplitudes& v, int n);

/// Unitary of one branch on the system qubits (n <= 12).
DenseOperator dense_matrix(const Ansatz& ansatz, Branch branch = Branch::Full);
/// <ancilla 0 branch, ancilla 1 branch>.
std::pair<DenseOperator, DenseOperator> dense_branches(const Ansatz& ansatz);
DenseOperator dense_matrix(const std::vector<GateOp>& ops, int n);

/// Concatenation: first `first`, then `second`. Lattices must match.
Ansatz compose(const Ansatz& first, const Ansatz& second);
Ansatz repeat_blocks(const Ansatz& block, int times);
/// Reuses each layer's gate on the same class of a larger lattice.
Ansatz transfer(const Ansatz& block, const Lattice& target);

struct LayerCount {
    int class_index = 0;
    bool controlled = false;
    int instances = 0;
    int b_gates = 0;
    int cz_gates = 0;
};

struct GateCounts {
    int instances = 0;
    int b_gates = 0;
    int cz_gates = 0;
    /// Two-qubit gates in B units on the busiest system qubit.
    int longest_path = 0;
    std::vector<LayerCount> per_layer;
};

/// 2 B / 3 CZ per SU(4) instance, 9 of either per controlled instance.
GateCounts gate_counts(const Ansatz& ansatz);
inline constexpr int kControlledGateCost = 9;

/// Text format with the lattice embedded and 17-digit gate entries.
void write_circuit(std::ostream& out, const Ansatz& ansatz);
Ansatz read_circuit(std::istream& in);
void save_circuit(const std::string& path, const Ansatz& ansatz);
Ansatz load_circuit(const std::string& path);

}  // namespace qcomp
