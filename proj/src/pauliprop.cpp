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


#include "qcomp/pauliprop.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <memory>
#include <thread>

namespace qcomp {

namespace {

// One table per distinct layer gate.
std::vector<std::shared_ptr<const ConjugationTable>> tables_for(const std::vector<GateOp>& ops) {
    std::map<int, std::pair<Gate, std::shared_ptr<const ConjugationTable>>> by_layer;
    std::vector<std::shared_ptr<const ConjugationTable>> out;
    out.reserve(ops.size());
    for (const auto& op : ops) {
        auto it = by_layer.find(op.layer);
        if (it == by_layer.end() || !(it->second.first == op.gate))
            it = by_layer.insert_or_assign(op.layer, std::make_pair(op.gate, std::make_shared<const ConjugationTable>(op.gate))).first;
        out.push_back(it->second.second);
    }
    return out;
}

PauliSum propagate_with(const PauliSum& obs, const std::vector<GateOp>& ops,
                        const std::vector<std::shared_ptr<const ConjugationTable>>& tables, const PropagationConfig& cfg) {
    PauliSum cur = obs;
    for (std::size_t k = ops.size(); k-- > 0;) {
        cur = conjugate_by_table(cur, *tables[k], ops[k].a, ops[k].b);
        if (cfg.kappa > 0.0) cur.prune(cfg.kappa);
        if (cfg.max_terms && cur.size() > *cfg.max_terms)
            throw Error("Pauli propagation exceeded " + std::to_string(*cfg.max_terms) + " terms (" +
                        std::to_string(cur.size()) + " after gate " + std::to_string(k) + ")");
    }
    return cur;
}

}  // namespace

PauliSum propagate(const PauliSum& observable, const std::vector<GateOp>& ops, const PropagationConfig& config) {
    if (config.kappa < 0.0) throw Error("kappa must be non-negative");
    return propagate_with(observable, ops, tables_for(ops), config);
}

PauliSum propagate(const PauliString& observable, const std::vector<GateOp>& ops, const PropagationConfig& config) {
    if (observable.weight() < 1) throw Error("observable must have weight >= 1");
    return propagate(PauliSum(observable), ops, config);
}

Real overlap(const PauliSum& a, const PauliSum& b) {
    if (a.n_qubits() != b.n_qubits()) throw Error("overlap of sums on different widths");
    const PauliSum& small = a.size() <= b.size() ? a : b;
    const PauliSum& large = a.size() <= b.size() ? b : a;
    Complex s = 0.0;
    for (const auto& [k, c] : small.terms()) {
        auto it = large.terms().find(k);
        if (it != large.terms().end()) s += &small == &a ? std::conj(c) * it->second : std::conj(it->second) * c;
    }
    return s.real();
}

PauliSum pauli_decompose(const DenseOperator& m, int n, Real dust) {
    if (n > 8) throw Error("dense Pauli decomposition limited to 8 qubits");
    const std::size_t dim = dim_of(n);
    if (static_cast<std::size_t>(m.rows()) != dim) throw Error("matrix size does not match qubit count");
    static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    PauliSum out(n);
    for (std::uint64_t x = 0; x < dim; ++x)
        for (std::uint64_t z = 0; z < dim; ++z) {
            // dense masks (qubit q at bit n-1-q) to key masks (qubit q at bit q)
            PauliKey key;
            for (int q = 0; q < n; ++q) {
                key.x |= ((x >> (n - 1 - q)) & 1ULL) << q;
                key.z |= ((z >> (n - 1 - q)) & 1ULL) << q;
            }
            const int n_y = std::popcount(x & z);
            // P(col ^ x, col) = i^{n_y} (-1)^{popcount(col & z)}; Tr(P^dagger M) / 2^n
            Complex acc = 0.0;
            for (std::size_t col = 0; col < dim; ++col) {
                const Complex p = (std::popcount(col & z) & 1) ? -ipow[n_y & 3] : ipow[n_y & 3];
                acc += std::conj(p) * m(static_cast<Eigen::Index>(col ^ x), static_cast<Eigen::Index>(col));
            }
            acc /= static_cast<Real>(dim);
            if (std::abs(acc) >= dust) out.add(key, acc);
        }
    return out;
}

std::vector<PauliSum> weight_one_images(const std::vector<GateOp>& ops, int n, const PropagationConfig& cfg,
                                        int threads) {
    if (cfg.kappa < 0.0) throw Error("kappa must be non-negative");
    const auto tables = tables_for(ops);
    const std::size_t jobs = 3 * static_cast<std::size_t>(n);
    std::vector<PauliSum> out(jobs);
    std::vector<std::string> errors(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs;) {
            try {
                const char letter = "XYZ"[j % 3];
                out[j] = propagate_with(PauliSum(PauliString::single(n, static_cast<int>(j / 3), letter)), ops, tables, cfg);
            } catch (const std::exception& e) {
                errors[j] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < std::max(1, threads); ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (!e.empty()) throw Error(e);
    return out;
}

std::vector<PauliSum> weight_one_images(const DenseOperator& u, int n) {
    std::vector<PauliSum> out;
    for (int i = 0; i < n; ++i)
        for (char letter : {'X', 'Y', 'Z'}) {
            const DenseOperator p = PauliString::single(n, i, letter).to_dense();
            out.push_back(pauli_decompose(u.adjoint() * p * u, n));
        }
    return out;
}

LocalInfidelity local_infidelity(const std::vector<PauliSum>& target, const std::vector<PauliSum>& approx, int n) {
    const std::size_t jobs = 3 * static_cast<std::size_t>(n);
    if (target.size() != jobs || approx.size() != jobs) throw Error("expected 3N Heisenberg images per circuit");
    LocalInfidelity r;
    r.per_site.assign(static_cast<std::size_t>(n), 0.0);
    Real sum = 0.0;
    for (std::size_t j = 0; j < jobs; ++j) {
        const Real o = overlap(target[j], approx[j]);
        sum += o;
        r.per_site[j / 3] += o / 3.0;
        r.max_terms = std::max({r.max_terms, target[j].size(), approx[j].size()});
        r.total_terms += target[j].size() + approx[j].size();
    }
    for (auto& s : r.per_site) s = 1.0 - s;
    r.c1loc = 0.5 - sum / (6.0 * n);
    const Real d = static_cast<Real>(dim_of(std::min(n, 62)));
    r.i_loc = 2.0 * n * (d / (d + 1.0)) * r.c1loc;
    return r;
}

LocalInfidelity local_infidelity(const std::vector<GateOp>& target, const std::vector<GateOp>& approx, int n,
                                 const PropagationConfig& cfg, int threads) {
    return local_infidelity(weight_one_images(target, n, cfg, threads), weight_one_images(approx, n, cfg, threads), n);
}

}  // namespace qcomp
