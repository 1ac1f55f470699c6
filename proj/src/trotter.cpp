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


#include "qcomp/trotter.hpp"

#include <cmath>

#include "qcomp/linalg.hpp"

namespace qcomp {

namespace {

// Letter whose single-site action anticommutes with sigma_a sigma_b through site a.
char bond_k_letter(char sigma) {
    switch (sigma) {
        case 'X': return 'Z';
        case 'Y': return 'X';
        default: return 'Y';
    }
}

// Layer under construction. `site` is set when the layer is a uniform
// single-qubit rotation on every site (gate = site (x) site on a perfect
// matching class).
struct RawLayer {
    Gate gate;
    int cls = 0;
    bool controlled = false;
    std::optional<Mat2> site;
};

class LayerBuilder {
public:
    explicit LayerBuilder(const Lattice& lat) : lat_(lat) {
        for (int c = 0; c < lat.class_count(); ++c) {
            single_perm_.push_back(lat.class_at(c).permutations.size() == 1);
            matching_.push_back(lat.class_at(c).is_perfect_matching(lat.n_sites()));
        }
    }

    void push(RawLayer l) {
        while (!out_.empty()) {
            RawLayer& top = out_.back();
            if (top.cls == l.cls && top.controlled == l.controlled && single_perm_[top.cls]) {
                l.gate = l.gate * top.gate;
                l.site = (top.site && l.site) ? std::optional<Mat2>(*l.site * *top.site) : std::nullopt;
                out_.pop_back();
                if (l.controlled && phase_aligned_distance(l.gate, Gate::Identity()) < 1e-12) return;
                continue;
            }
            if (top.site && !top.controlled && !l.controlled && !l.site && matching_[l.cls]) {
                l.gate = l.gate * kron(*top.site, *top.site);
                out_.pop_back();
                continue;
            }
            if (l.site && !l.controlled && !top.controlled && !top.site && matching_[top.cls]) {
                top.gate = kron(*l.site, *l.site) * top.gate;
                return;
            }
            break;
        }
        out_.push_back(std::move(l));
    }

    std::vector<Layer> layers() const {
        std::vector<Layer> v;
        for (const auto& l : out_) v.push_back({l.gate, l.cls, l.controlled});
        return v;
    }

private:
    const Lattice& lat_;
    std::vector<bool> single_perm_, matching_;
    std::vector<RawLayer> out_;
};

class TrotterEmitter {
public:
    TrotterEmitter(const Partition& p, bool controlled) : p_(p), lat_(p.lattice()), builder_(lat_), controlled_(controlled) {
        if (lat_.n_sites() < 2) throw Error("Trotter circuits need at least two sites");
        matching_ = lat_.perfect_matching_class();
        if (controlled) {
            for (const auto& part : p.parts) {
                if (!part.k) throw Error("controlled Trotter circuit needs a single-layer K string for every part");
                if (part.kind == PartitionPart::Kind::Bond && lat_.class_at(part.class_index).permutations.size() != 1)
                    throw Error("controlled Trotter circuit needs single-permutation classes");
            }
            if (!matching_) throw Error("controlled field blocks need a perfect-matching class");
        }
    }

    // exp(-i * c * tau * H_part), wrapped by K layers when controlled.
    void block(const PartitionPart& part, Real scaled_tau) {
        if (controlled_) k_layer(part);
        const Real angle = part.coeff * scaled_tau;
        const Mat2 s = pauli_matrix(part.kind == PartitionPart::Kind::Class ? 'I' : part.letter);
        if (part.kind == PartitionPart::Kind::Class) {
            builder_.push({expm_hermitian(part.generator, angle), part.class_index, false, std::nullopt});
        } else if (part.kind == PartitionPart::Kind::Bond) {
            const Gate gen = kron(s, s);
            builder_.push({expm_hermitian(gen, angle), part.class_index, false, std::nullopt});
        } else if (matching_) {
            const Mat2 r = expm_hermitian(s, angle);
            builder_.push({kron(r, r), *matching_, false, r});
        } else {
            const auto deg = lat_.regular_degree();
            if (!deg) throw Error("field layers need a perfect-matching class or a regular lattice");
            const Mat2 r = expm_hermitian(s, angle / *deg);
            for (int c = 0; c < lat_.class_count(); ++c) builder_.push({kron(r, r), c, false, std::nullopt});
        }
        if (controlled_) k_layer(part);
    }

    void s1(Real tau) {
        for (const auto& part : p_.parts) block(part, tau);
    }

    void s2(Real tau) {
        for (const auto& part : p_.parts) block(part, tau / 2);
        for (auto it = p_.parts.rbegin(); it != p_.parts.rend(); ++it) block(*it, tau / 2);
    }

    void s4(Real tau) {
        const Real p = suzuki_p();
        s2(p * tau);
        s2(p * tau);
        s2((1 - 4 * p) * tau);
        s2(p * tau);
        s2(p * tau);
    }

    std::vector<Layer> layers() const { return builder_.layers(); }

private:
    void k_layer(const PartitionPart& part) {
        if (part.kind == PartitionPart::Kind::Bond) {
            const Mat2 k = pauli_matrix(bond_k_letter(part.letter));
            builder_.push({kron(k, Mat2::Identity()), part.class_index, true, std::nullopt});
        } else {
            const Mat2 k = pauli_matrix(part.letter == 'X' ? 'Z' : 'X');
            builder_.push({kron(k, k), *matching_, true, std::nullopt});
        }
    }

    const Partition& p_;
    const Lattice& lat_;
    LayerBuilder builder_;
    bool controlled_;
    std::optional<int> matching_;
};

}  // namespace

PauliSum Partition::sum() const {
    PauliSum total(lattice().n_sites());
    for (const auto& part : parts) total += part.h;
    total.prune();
    return total;
}

Partition hm_partition(const Hamiltonian& h) {
    const Lattice& lat = h.lattice();
    const int n = lat.n_sites();
    if (!(h.pauli() == heisenberg_field(lat).pauli())) throw Error("Hamiltonian is not the Heisenberg model in a field");
    Partition p{h, {}};
    for (int c = 0; c < lat.class_count(); ++c) {
        const auto& cls = lat.class_at(c);
        for (char sigma : {'X', 'Y', 'Z'}) {
            PartitionPart part;
            part.kind = PartitionPart::Kind::Bond;
            part.letter = sigma;
            part.coeff = 1.0;
            part.class_index = c;
            part.h = PauliSum(n);
            for (const auto& b : cls.bonds()) part.h.add(PauliString(n).with_letter(b.a, sigma).with_letter(b.b, sigma), 1.0);
            if (cls.permutations.size() == 1) {
                PauliString k(n);
                for (const auto& b : cls.bonds()) k = k.with_letter(b.a, bond_k_letter(sigma));
                part.k = k;
            }
            p.parts.push_back(std::move(part));
        }
    }
    const std::pair<char, Real> fields[3] = {{'Y', -1.0}, {'Z', 1.0}, {'X', 3.0}};
    for (const auto& [sigma, coeff] : fields) {
        PartitionPart part;
        part.kind = PartitionPart::Kind::Field;
        part.letter = sigma;
        part.coeff = coeff;
        part.h = PauliSum(n);
        PauliString k(n);
        for (int i = 0; i < n; ++i) {
            part.h.add(PauliString::single(n, i, sigma), coeff);
            k = k.with_letter(i, sigma == 'X' ? 'Z' : 'X');
        }
        part.k = k;
        p.parts.push_back(std::move(part));
    }
    return p;
}

Partition class_partition(const Hamiltonian& h) {
    const std::vector<Gate> gens = class_generators(h);
    const Lattice& lat = h.lattice();
    const int n = lat.n_sites();
    const auto deg = lat.regular_degree();
    Partition p{h, {}};
    for (int c = 0; c < lat.class_count(); ++c) {
        PartitionPart part;
        part.kind = PartitionPart::Kind::Class;
        part.class_index = c;
        part.generator = gens[c];
        part.h = PauliSum(n);
        for (const auto& [key, coeff] : h.pauli().terms()) {
            const PauliString ps(n, key);
            const auto bonds = lat.class_at(c).bonds();
            if (ps.weight() == 2) {
                for (const auto& b : bonds)
                    if (ps.letter(b.a) != 'I' && ps.letter(b.b) != 'I') part.h.add(ps, coeff);
            } else if (ps.weight() == 1) {
                int q = 0;
                while (ps.letter(q) == 'I') ++q;
                int hits = 0;
                for (const auto& b : bonds) hits += (b.a == q) + (b.b == q);
                if (hits) part.h.add(ps, coeff * Real(hits) / Real(*deg));
            }
        }
        part.h.prune(1e-15);
        p.parts.push_back(std::move(part));
    }
    return p;
}

Real suzuki_p() { return 1.0 / (4.0 - std::cbrt(4.0)); }

Ansatz trotter_circuit(const Partition& partition, Real t, int order, int steps, bool controlled) {
    if (steps < 1) throw Error("Trotter steps must be at least 1");
    if (order != 1 && order != 2 && order != 4) throw Error("unsupported Trotter order " + std::to_string(order));
    TrotterEmitter em(partition, controlled);
    const Real tau = t / steps;
    for (int s = 0; s < steps; ++s) {
        if (order == 1) em.s1(tau);
        else if (order == 2) em.s2(tau);
        else em.s4(tau);
    }
    return Ansatz(partition.lattice(), em.layers());
}

std::vector<Gate> class_generators(const Hamiltonian& h) {
    const Lattice& lat = h.lattice();
    const int n = lat.n_sites();
    if (!is_translation_invariant(h)) throw Error("warm start needs a translationally invariant Hamiltonian");
    const auto deg = lat.regular_degree();
    if (!deg || *deg == 0) throw Error("warm start needs a regular lattice");
    static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<Gate> gens;
    for (const auto& cls : lat.classes()) {
        if (cls.bond_count() == 0) throw Error("empty lattice class");
        const Bond b = cls.bonds().front();
        Gate g = Gate::Zero();
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
                if (p == 0 && q == 0) continue;
                Complex c;
                if (q == 0) c = h.pauli().coefficient(PauliString::single(n, b.a, kLetters[p])) / Real(*deg);
                else if (p == 0) c = h.pauli().coefficient(PauliString::single(n, b.b, kLetters[q])) / Real(*deg);
                else c = h.pauli().coefficient(PauliString(n).with_letter(b.a, kLetters[p]).with_letter(b.b, kLetters[q]));
                if (c != Complex{0.0}) g += c.real() * kron(pauli_matrix(kLetters[p]), pauli_matrix(kLetters[q]));
            }
        gens.push_back(g);
    }
    return gens;
}

Ansatz trotter_init_point(const Hamiltonian& h, Real dt, int layer_budget, int controlled_layers) {
    const Lattice& lat = h.lattice();
    const int cc = lat.class_count();
    if (layer_budget < cc) throw Error("layer budget is smaller than the class count");
    if (controlled_layers < 0) throw Error("negative control layer count");
    const std::vector<Gate> gens = class_generators(h);
    const int steps = layer_budget / cc;
    std::vector<Layer> plain;
    for (int s = 0; s < steps; ++s)
        for (int c = 0; c < cc; ++c) plain.push_back({expm_hermitian(gens[c], dt / steps), c, false});
    for (int j = static_cast<int>(plain.size()); j < layer_budget; ++j) plain.push_back({Gate::Identity(), j % cc, false});

    std::vector<Layer> layers;
    const int total = layer_budget;
    int next = 0;
    for (int g = 0; g < controlled_layers; ++g) {
        const int pos = ((g + 1) * total) / (controlled_layers + 1);
        while (next < pos) layers.push_back(plain[next++]);
        layers.push_back({Gate::Identity(), g % cc, true});
    }
    while (next < total) layers.push_back(plain[next++]);
    Ansatz a(lat, std::move(layers));
    a.set_block_info(1, a.depth());
    return a;
}

Ansatz trotter_init_point(const Partition& partition, Real dt, int layer_budget, int controlled_layers) {
    return trotter_init_point(partition.hamiltonian, dt, layer_budget, controlled_layers);
}

}  // namespace qcomp
