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


#include "qcomp/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qcomp/linalg.hpp"

namespace qcomp {

namespace {

constexpr Real kUnitaryTol = 1e-10;

struct PairBits {
    std::size_t ma, mb;  // masks of qubit a and b
    int lo, hi;          // sorted bit positions
};

PairBits pair_bits(int n, int a, int b) {
    if (a == b || a < 0 || b < 0 || a >= n || b >= n) throw Error("invalid qubit pair for two-qubit gate");
    const int pa = n - 1 - a, pb = n - 1 - b;
    return {std::size_t{1} << pa, std::size_t{1} << pb, std::min(pa, pb), std::max(pa, pb)};
}

// Index r of the reduced register with zero bits inserted at lo and hi.
inline std::size_t spread(std::size_t r, int lo, int hi) {
    const std::size_t low = r & ((std::size_t{1} << lo) - 1);
    r = ((r >> lo) << (lo + 1)) | low;
    const std::size_t mid = r & ((std::size_t{1} << hi) - 1);
    return ((r >> hi) << (hi + 1)) | mid;
}

// Stored gates are left untouched when already special unitary, which keeps
// file round trips bit exact.
Gate normalized_gate(const Gate& g) {
    return std::abs(g.determinant() - 1.0) <= 1e-13 ? g : su_normalize(g);
}

void require_dense(int n) {
    if (n > kMaxDenseQubits) throw Error("dense circuit simulation limited to " + std::to_string(kMaxDenseQubits) + " qubits");
}

}  // namespace

Ansatz::Ansatz(Lattice lattice, std::vector<Layer> layers) : lattice_(std::move(lattice)), layers_(std::move(layers)) {
    for (auto& l : layers_) {
        if (l.class_index < 0 || l.class_index >= lattice_.class_count()) throw Error("layer references a missing class");
        if (!is_unitary(l.gate, kUnitaryTol)) throw Error("layer gate is not unitary");
        l.gate = normalized_gate(l.gate);
    }
    block_depth_ = static_cast<int>(layers_.size());
}

Ansatz Ansatz::identity(const Lattice& lattice, int blocks) {
    std::vector<Layer> layers;
    for (int k = 0; k < blocks; ++k)
        for (int c = 0; c < lattice.class_count(); ++c) layers.push_back({Gate::Identity(), c, false});
    Ansatz a(lattice, std::move(layers));
    a.set_block_info(blocks, lattice.class_count());
    return a;
}

int Ansatz::controlled_count() const {
    return static_cast<int>(std::count_if(layers_.begin(), layers_.end(), [](const Layer& l) { return l.controlled; }));
}

void Ansatz::set_gate(int layer, const Gate& gate) {
    if (!is_unitary(gate, kUnitaryTol)) throw Error("gate is not unitary");
    layers_.at(static_cast<std::size_t>(layer)).gate = normalized_gate(gate);
}

Ansatz Ansatz::reduced() const {
    std::vector<Layer> kept;
    for (const auto& l : layers_)
        if (!l.controlled) kept.push_back(l);
    return Ansatz(lattice_, std::move(kept));
}

Ansatz Ansatz::uncontrolled() const {
    Ansatz out = *this;
    for (auto& l : out.layers_) l.controlled = false;
    return out;
}

void Ansatz::set_block_info(int repetitions, int block_depth) {
    if (repetitions < 1 || block_depth < 0) throw Error("invalid block bookkeeping");
    repetitions_ = repetitions;
    block_depth_ = block_depth;
}

std::vector<GateOp> gate_ops(const Ansatz& ansatz, Branch branch) {
    std::vector<GateOp> ops;
    for (int j = 0; j < ansatz.depth(); ++j) {
        const Layer& l = ansatz.layer(j);
        if (l.controlled && branch == Branch::Reduced) continue;
        for (const auto& perm : ansatz.lattice().class_at(l.class_index).permutations)
            for (const auto& bond : perm) ops.push_back({l.gate, bond.a, bond.b, j, l.controlled});
    }
    return ops;
}

StateVector::StateVector(int n, Amplitudes amps) : n_qubits(n), amplitudes(std::move(amps)) {
    if (static_cast<std::size_t>(amplitudes.size()) != dim_of(n)) throw Error("amplitude count does not match qubit count");
}

StateVector StateVector::basis(int n, std::size_t index) {
    Amplitudes v = Amplitudes::Zero(static_cast<Eigen::Index>(dim_of(n)));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(n, std::move(v));
}

void apply_gate(Complex* amps, int n, const Gate& g, int a, int b) {
    const PairBits pb = pair_bits(n, a, b);
    const std::size_t quarter = dim_of(n) >> 2;
    for (std::size_t r = 0; r < quarter; ++r) {
        const std::size_t i0 = spread(r, pb.lo, pb.hi);
        const std::size_t idx[4] = {i0, i0 | pb.mb, i0 | pb.ma, i0 | pb.ma | pb.mb};
        const Complex x0 = amps[idx[0]], x1 = amps[idx[1]], x2 = amps[idx[2]], x3 = amps[idx[3]];
        for (int p = 0; p < 4; ++p) amps[idx[p]] = g(p, 0) * x0 + g(p, 1) * x1 + g(p, 2) * x2 + g(p, 3) * x3;
    }
}

void apply_gate(Amplitudes& v, int n, const Gate& g, int a, int b) { apply_gate(v.data(), n, g, a, b); }

void apply_gate_left(DenseOperator& m, int n, const Gate& g, int a, int b) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) apply_gate(m.col(c).data(), n, g, a, b);
}

void apply_gate_right(DenseOperator& m, int n, const Gate& g, int a, int b) {
    const PairBits pb = pair_bits(n, a, b);
    const std::size_t quarter = dim_of(n) >> 2;
    for (std::size_t r = 0; r < quarter; ++r) {
        const std::size_t i0 = spread(r, pb.lo, pb.hi);
        const Eigen::Index idx[4] = {static_cast<Eigen::Index>(i0), static_cast<Eigen::Index>(i0 | pb.mb),
                                     static_cast<Eigen::Index>(i0 | pb.ma),
                                     static_cast<Eigen::Index>(i0 | pb.ma | pb.mb)};
        Complex* c[4] = {m.col(idx[0]).data(), m.col(idx[1]).data(), m.col(idx[2]).data(), m.col(idx[3]).data()};
        for (Eigen::Index row = 0; row < m.rows(); ++row) {
            const Complex x0 = c[0][row], x1 = c[1][row], x2 = c[2][row], x3 = c[3][row];
            for (int p = 0; p < 4; ++p) c[p][row] = x0 * g(0, p) + x1 * g(1, p) + x2 * g(2, p) + x3 * g(3, p);
        }
    }
}

Gate partial_trace_pair(const DenseOperator& x, int n, int a, int b) {
    const PairBits pb = pair_bits(n, a, b);
    const std::size_t quarter = dim_of(n) >> 2;
    Gate e = Gate::Zero();
    for (std::size_t r = 0; r < quarter; ++r) {
        const std::size_t i0 = spread(r, pb.lo, pb.hi);
        const Eigen::Index idx[4] = {static_cast<Eigen::Index>(i0), static_cast<Eigen::Index>(i0 | pb.mb),
                                     static_cast<Eigen::Index>(i0 | pb.ma),
                                     static_cast<Eigen::Index>(i0 | pb.ma | pb.mb)};
        for (int q = 0; q < 4; ++q)
            for (int p = 0; p < 4; ++p) e(q, p) += x(idx[q], idx[p]);
    }
    return e;
}

Gate partial_trace_outer(const Amplitudes& phi, const Amplitudes& chi, int n, int a, int b) {
    const PairBits pb = pair_bits(n, a, b);
    const std::size_t quarter = dim_of(n) >> 2;
    Gate e = Gate::Zero();
    for (std::size_t r = 0; r < quarter; ++r) {
        const std::size_t i0 = spread(r, pb.lo, pb.hi);
        const std::size_t idx[4] = {i0, i0 | pb.mb, i0 | pb.ma, i0 | pb.ma | pb.mb};
        Complex f[4], c[4];
        for (int k = 0; k < 4; ++k) {
            f[k] = phi(static_cast<Eigen::Index>(idx[k]));
            c[k] = std::conj(chi(static_cast<Eigen::Index>(idx[k])));
        }
        for (int q = 0; q < 4; ++q)
            for (int p = 0; p < 4; ++p) e(q, p) += f[q] * c[p];
    }
    return e;
}

void apply_ops(const std::vector<GateOp>& ops, Amplitudes& v, int n) {
    for (const auto& op : ops) apply_gate(v, n, op.gate, op.a, op.b);
}

StateVector apply(const Ansatz& ansatz, const StateVector& state, std::optional<int> ancilla) {
    if (state.n_qubits != ansatz.n_system()) throw Error("state width does not match the circuit");
    if (ansatz.has_controls() != ancilla.has_value())
        throw Error(ansatz.has_controls() ? "controlled circuit needs an ancilla value" : "circuit has no controlled layers");
    if (ancilla && *ancilla != 0 && *ancilla != 1) throw Error("ancilla must be 0 or 1");
    const Branch branch = (ancilla && *ancilla == 0) ? Branch::Reduced : Branch::Full;
    StateVector out = state;
    apply_ops(gate_ops(ansatz, branch), out.amplitudes, out.n_qubits);
    return out;
}

StateVector apply_controlled(const Ansatz& ansatz, const StateVector& state) {
    const int n = ansatz.n_system();
    if (state.n_qubits != n + 1) throw Error("controlled application needs system plus one ancilla qubit");
    const Eigen::Index half = static_cast<Eigen::Index>(dim_of(n));
    StateVector out = state;
    Amplitudes lo = out.amplitudes.head(half), hi = out.amplitudes.tail(half);
    apply_ops(gate_ops(ansatz, Branch::Reduced), lo, n);
    apply_ops(gate_ops(ansatz, Branch::Full), hi, n);
    out.amplitudes.head(half) = lo;
    out.amplitudes.tail(half) = hi;
    return out;
}

DenseOperator dense_matrix(const std::vector<GateOp>& ops, int n) {
    require_dense(n);
    const Eigen::Index dim = static_cast<Eigen::Index>(dim_of(n));
    DenseOperator m = DenseOperator::Identity(dim, dim);
    for (const auto& op : ops) apply_gate_left(m, n, op.gate, op.a, op.b);
    return m;
}

DenseOperator dense_matrix(const Ansatz& ansatz, Branch branch) {
    return dense_matrix(gate_ops(ansatz, branch), ansatz.n_system());
}

std::pair<DenseOperator, DenseOperator> dense_branches(const Ansatz& ansatz) {
    return {dense_matrix(ansatz, Branch::Reduced), dense_matrix(ansatz, Branch::Full)};
}

Ansatz compose(const Ansatz& first, const Ansatz& second) {
    if (!(first.lattice() == second.lattice())) throw Error("cannot compose circuits on different lattices");
    std::vector<Layer> layers = first.layers();
    layers.insert(layers.end(), second.layers().begin(), second.layers().end());
    return Ansatz(first.lattice(), std::move(layers));
}

Ansatz repeat_blocks(const Ansatz& block, int times) {
    if (times < 1) throw Error("repetition count must be at least 1");
    std::vector<Layer> layers;
    layers.reserve(block.layers().size() * static_cast<std::size_t>(times));
    for (int k = 0; k < times; ++k) layers.insert(layers.end(), block.layers().begin(), block.layers().end());
    Ansatz out(block.lattice(), std::move(layers));
    out.set_block_info(block.repetitions() * times, block.block_depth());
    return out;
}

Ansatz transfer(const Ansatz& block, const Lattice& target) {
    if (target.class_count() != block.lattice().class_count())
        throw Error("target lattice has " + std::to_string(target.class_count()) + " classes, block expects " +
                    std::to_string(block.lattice().class_count()));
    Ansatz out(target, block.layers());
    out.set_block_info(block.repetitions(), block.block_depth());
    return out;
}

GateCounts gate_counts(const Ansatz& ansatz) {
    GateCounts gc;
    std::vector<int> per_qubit(static_cast<std::size_t>(ansatz.n_system()), 0);
    for (const auto& l : ansatz.layers()) {
        LayerCount lc;
        lc.class_index = l.class_index;
        lc.controlled = l.controlled;
        lc.instances = ansatz.lattice().class_at(l.class_index).bond_count();
        const int b_each = l.controlled ? kControlledGateCost : 2;
        const int cz_each = l.controlled ? kControlledGateCost : 3;
        lc.b_gates = lc.instances * b_each;
        lc.cz_gates = lc.instances * cz_each;
        for (const auto& bond : ansatz.lattice().class_at(l.class_index).bonds()) {
            per_qubit[static_cast<std::size_t>(bond.a)] += b_each;
            per_qubit[static_cast<std::size_t>(bond.b)] += b_each;
        }
        gc.instances += lc.instances;
        gc.b_gates += lc.b_gates;
        gc.cz_gates += lc.cz_gates;
        gc.per_layer.push_back(lc);
    }
    gc.longest_path = per_qubit.empty() ? 0 : *std::max_element(per_qubit.begin(), per_qubit.end());
    return gc;
}

namespace {

std::string fmt17(Real v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Real parse_real(const std::string& tok) {
    char* end = nullptr;
    const Real v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') throw Error("bad number in circuit file: " + tok);
    return v;
}

}  // namespace

void write_circuit(std::ostream& out, const Ansatz& ansatz) {
    out << "qcomp-circuit 1\n";
    out << "lattice\n";
    write_lattice(out, ansatz.lattice());
    out << "end-lattice\n";
    out << "repetitions " << ansatz.repetitions() << "\n";
    out << "block_depth " << ansatz.block_depth() << "\n";
    out << "layers " << ansatz.depth() << "\n";
    for (const auto& l : ansatz.layers()) {
        out << "layer " << l.class_index << " " << (l.controlled ? 1 : 0) << "\n";
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                out << (c ? "  " : "") << fmt17(l.gate(r, c).real()) << " " << fmt17(l.gate(r, c).imag());
            }
            out << "\n";
        }
    }
}

Ansatz read_circuit(std::istream& in) {
    std::string line, word;
    auto expect = [&](const std::string& key) {
        if (!(in >> word) || word != key) throw Error("circuit file: expected '" + key + "'");
    };
    expect("qcomp-circuit");
    int version = 0;
    if (!(in >> version) || version != 1) throw Error("circuit file: unsupported version");
    expect("lattice");
    std::getline(in, line);
    std::stringstream lat_text;
    bool closed = false;
    while (std::getline(in, line)) {
        if (line == "end-lattice") {
            closed = true;
            break;
        }
        lat_text << line << "\n";
    }
    if (!closed) throw Error("circuit file: unterminated lattice section");
    Lattice lattice = parse_lattice(lat_text);
    int reps = 1, block = 0, count = 0;
    expect("repetitions");
    in >> reps;
    expect("block_depth");
    in >> block;
    expect("layers");
    if (!(in >> count) || count < 0) throw Error("circuit file: bad layer count");
    std::vector<Layer> layers;
    for (int k = 0; k < count; ++k) {
        expect("layer");
        Layer l;
        int ctrl = 0;
        if (!(in >> l.class_index >> ctrl)) throw Error("circuit file: bad layer header");
        l.controlled = ctrl != 0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                std::string re, im;
                if (!(in >> re >> im)) throw Error("circuit file: truncated gate");
                l.gate(r, c) = Complex{parse_real(re), parse_real(im)};
            }
        layers.push_back(l);
    }
    Ansatz a(std::move(lattice), std::move(layers));
    a.set_block_info(reps, block);
    return a;
}

void save_circuit(const std::string& path, const Ansatz& ansatz) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_circuit(out, ansatz);
}

Ansatz load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open circuit file " + path);
    return read_circuit(in);
}

}  // namespace qcomp
