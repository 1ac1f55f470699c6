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
#include <string>
#include <vector>

#include "qcomp/circuit.hpp"
#include "qcomp/hamiltonian.hpp"

namespace qcomp {

enum class CostKind { TraceNormJ, HaarSampledC, HaarExactC, TiccJtilde };

std::string to_string(CostKind kind);
CostKind cost_kind_from_string(const std::string& name);

/// Cost function with its target. Sampled states are drawn once from the
/// seed (one substream per sample index) and reused by every evaluation.
struct CostSpec {
    CostKind kind = CostKind::TraceNormJ;
    Real t = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    int gamma = 0;
    /// U_t.
    DenseOperator target;
    /// U_{-t}; TICC only.
    DenseOperator target_back;
    std::vector<Amplitudes> states;
    std::vector<Amplitudes> target_states;

    static CostSpec trace_norm(const DenseOperator& u);
    static CostSpec haar_sampled(const DenseOperator& u, int samples, std::uint64_t seed);
    static CostSpec haar_exact(const DenseOperator& u);
    static CostSpec ticc(const DenseOperator& forward, const DenseOperator& backward, int gamma);
    static CostSpec make(CostKind kind, const Hamiltonian& h, Real t, int samples = 0, std::uint64_t seed = 0,
                         int gamma = 0);

    int n_qubits() const;
    /// Natural magnitude of the cost: 2^N for trace kinds, 1 for infidelities.
    Real scale() const;
};

struct SampledEstimate {
    Real value = 0.0;
    Real std_error = 0.0;
};

/// -Re Tr(U^dagger W).
Real cost_trace_norm(const Ansatz& ansatz, const DenseOperator& target);
Real cost_trace_norm(const DenseOperator& w, const DenseOperator& target);
/// 1 - mean |<v|U^dagger W|v>|^2 over `samples` Haar states.
SampledEstimate cost_haar_sampled(const Ansatz& ansatz, const DenseOperator& target, int samples, std::uint64_t seed);
/// Haar average in closed form: 1 - (|Tr U^dagger W|^2 + D) / (D (D + 1)).
Real cost_haar_exact(const DenseOperator& w, const DenseOperator& target);
/// J_{-t}(full circuit) + J_t(circuit with controlled layers removed).
Real cost_ticc(const Ansatz& ansatz, const Hamiltonian& h, Real t);
Real cost_ticc(const Ansatz& ansatz, const DenseOperator& forward, const DenseOperator& backward);

Real evaluate(const Ansatz& ansatz, const CostSpec& spec);

struct Gradient {
    Real cost = 0.0;
    /// d cost / d conj(V_j) pairing: Euclidean gradient per layer.
    std::vector<Gate> euclidean;
    /// Traceless skew-Hermitian Omega_j = P_su(V_j^dagger G_j); the descent
    /// direction at V_j is -V_j Omega_j.
    std::vector<Gate> riemannian;
    Real norm = 0.0;
};

Gradient gradient(const Ansatz& ansatz, const CostSpec& spec);

/// V_j <- V_j exp(-step * Omega_j), re-projected to det 1.
Ansatz retract(const Ansatz& ansatz, const std::vector<Gate>& omega, Real step);

struct DescendConfig {
    int max_iters = 5000;
    /// Relative to CostSpec::scale().
    Real grad_tol = 1e-9;
    Real initial_step = 0.05;
    Real armijo_c = 1e-4;
    int max_backtracks = 60;
    /// Barzilai-Borwein trial steps; plain step doubling otherwise.
    bool bb_steps = true;
};

struct TracePoint {
    int iteration = 0;
    Real cost = 0.0;
    Real grad_norm = 0.0;
};

struct OptimizationRun {
    Ansatz initial;
    Ansatz final;
    std::vector<TracePoint> cost_trace;
    bool converged = false;
    /// "gradient", "max_iters" or "line_search".
    std::string stop_reason;
    int iterations = 0;
    double wall_time = 0.0;
    std::uint64_t seed = 0;
    Real final_cost() const { return cost_trace.empty() ? 0.0 : cost_trace.back().cost; }
};

OptimizationRun descend(const Ansatz& initial, const CostSpec& spec, const DescendConfig& config = {},
                        std::uint64_t seed = 0);

struct Theorem1Report {
    Real dt = 0.0;
    Real hamiltonian_norm = 0.0;
    /// Gate instances of the uncontrolled circuit; equals N dL / 2 on chains.
    int instances = 0;
    /// ||H|| / instances.
    Real budget = 0.0;
    std::vector<Real> per_layer_norms;
    std::vector<bool> principal_log_ok;
    std::vector<bool> within_budget;
    /// sum over layers of instances * norm, compared against ||H||.
    Real magnus_sum = 0.0;
    bool all_within_budget = false;
};

/// H0_j = (i/dt) log V_j on each layer. Throws NumericalError when a gate has
/// an eigenvalue within 1e-6 rad of -1.
Theorem1Report theorem1_check(const Ansatz& initial, const Hamiltonian& h, Real dt);

/// Random traceless Hermitian generator per layer, scaled together so that
/// sum_j instances_j ||h_j|| = norm_cap; layer j is exp(-i dt h_j).
Ansatz random_generator_init(const Lattice& lattice, int layers, Real dt, Real norm_cap, std::uint64_t seed);

struct Cluster {
    int size = 0;
    int representative = 0;
    Real best_cost = 0.0;
    Real worst_cost = 0.0;
};

/// Greedy clustering by phase-aligned Frobenius distance to representatives.
std::vector<Cluster> cluster_unitaries(const std::vector<DenseOperator>& endpoints, const std::vector<Real>& costs,
                                       Real tol);

struct SweepConfig {
    Lattice lattice;
    std::vector<Real> dts;
    int searches = 10;
    int layers = 0;  // 0 = class count
    Real norm_cap = 1.0;
    Real target_norm = 1.0;
    std::uint64_t seed = 1;
    int threads = 1;
    /// One target Hamiltonian for every dt instead of a fresh one per dt.
    bool fixed_hamiltonian = false;
    Real cluster_tol = 1e-5;
    DescendConfig descend;
};

struct SweepPoint {
    Real dt = 0.0;
    int searches = 0;
    int converged = 0;
    int clusters = 0;
    std::vector<Cluster> cluster_list;
    Real best_cost = 0.0;
    Real worst_cost = 0.0;
    Real mean_iterations = 0.0;
    std::uint64_t hamiltonian_seed = 0;
};

std::vector<SweepPoint> tcrit_sweep(const SweepConfig& config);

/// Repeats the block t_total / dt times; optionally re-optimizes all layers.
OptimizationRun bootstrap(const OptimizationRun& block_run, Real dt, Real t_total, bool reoptimize,
                          const CostSpec& spec, const DescendConfig& config = {});

/// 1 - E|<v|U_t^dagger U|v>|^2 over Haar states. Controlled circuits average
/// the reduced branch against U_t and the full branch against U_{-t}.
SampledEstimate evolution_infidelity(const DenseOperator& u, const Hamiltonian& h, Real t, int samples,
                                     std::uint64_t seed);
SampledEstimate evolution_infidelity(const Ansatz& ansatz, const Hamiltonian& h, Real t, int samples,
                                     std::uint64_t seed);
/// Closed-form Haar average of the same quantity.
Real evolution_infidelity_exact(const DenseOperator& u, const Hamiltonian& h, Real t);
Real evolution_infidelity_exact(const Ansatz& ansatz, const Hamiltonian& h, Real t);

}  // namespace qcomp
