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


#include "qcomp/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "qcomp/linalg.hpp"
#include "qcomp/rng.hpp"

namespace qcomp {

namespace {

struct Sweep {
    Complex value;
    std::vector<Gate> env;  // sum of environments per layer
};

// Tr(T^dagger W) and, per layer, the sum of E_k with Tr(T^dagger W) = Tr(g_k E_k).
Sweep trace_sweep(const std::vector<GateOp>& ops, int n, const DenseOperator& target, int n_layers) {
    Sweep s{Complex{0.0}, std::vector<Gate>(static_cast<std::size_t>(n_layers), Gate::Zero())};
    const std::size_t m = ops.size();
    if (m == 0) {
        s.value = target.adjoint().trace();
        return s;
    }
    DenseOperator x = target.adjoint();
    for (std::size_t k = m; k-- > 1;) apply_gate_right(x, n, ops[k].gate, ops[k].a, ops[k].b);
    for (std::size_t k = 0; k < m; ++k) {
        const Gate e = partial_trace_pair(x, n, ops[k].a, ops[k].b);
        if (k == 0) s.value = (ops[0].gate * e).trace();
        s.env[static_cast<std::size_t>(ops[k].layer)] += e;
        if (k + 1 < m) {
            apply_gate_left(x, n, ops[k].gate, ops[k].a, ops[k].b);
            apply_gate_right(x, n, ops[k + 1].gate.adjoint(), ops[k + 1].a, ops[k + 1].b);
        }
    }
    return s;
}

// <v|U^dagger W|v> with uv = U v, and the per-layer environments of that overlap.
Sweep state_sweep(const std::vector<GateOp>& ops, int n, const Amplitudes& v, const Amplitudes& uv, int n_layers) {
    Sweep s{Complex{0.0}, std::vector<Gate>(static_cast<std::size_t>(n_layers), Gate::Zero())};
    const std::size_t m = ops.size();
    if (m == 0) {
        s.value = uv.dot(v);
        return s;
    }
    Amplitudes phi = v, chi = uv;
    for (std::size_t k = m; k-- > 1;) apply_gate(chi, n, ops[k].gate.adjoint(), ops[k].a, ops[k].b);
    for (std::size_t k = 0; k < m; ++k) {
        const Gate e = partial_trace_outer(phi, chi, n, ops[k].a, ops[k].b);
        if (k == 0) s.value = (ops[0].gate * e).trace();
        s.env[static_cast<std::size_t>(ops[k].layer)] += e;
        if (k + 1 < m) {
            apply_gate(phi, n, ops[k].gate, ops[k].a, ops[k].b);
            apply_gate(chi, n, ops[k + 1].gate, ops[k + 1].a, ops[k + 1].b);
        }
    }
    return s;
}

void check_target(const Ansatz& a, const DenseOperator& u) {
    const auto dim = static_cast<Eigen::Index>(dim_of(a.n_system()));
    if (u.rows() != dim || u.cols() != dim) throw Error("target dimension does not match the circuit");
}

Real inner(const std::vector<Gate>& a, const std::vector<Gate>& b) {
    Real s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i].adjoint() * b[i]).trace().real();
    return s;
}

void require_finite(Real v, const char* what) {
    if (!std::isfinite(v)) throw NumericalError(std::string("non-finite ") + what);
}

std::vector<Amplitudes> draw_states(int n, int samples, std::uint64_t seed, std::string_view label) {
    std::vector<Amplitudes> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        Rng rng = substream(seed, label, {static_cast<std::uint64_t>(s)});
        out.push_back(haar_state(n, rng));
    }
    return out;
}

SampledEstimate mean_and_error(const std::vector<Real>& xs) {
    SampledEstimate e;
    if (xs.empty()) return e;
    Real sum = 0.0;
    for (Real x : xs) sum += x;
    e.value = sum / static_cast<Real>(xs.size());
    if (xs.size() > 1) {
        Real var = 0.0;
        for (Real x : xs) var += (x - e.value) * (x - e.value);
        var /= static_cast<Real>(xs.size() - 1);
        e.std_error = std::sqrt(var / static_cast<Real>(xs.size()));
    }
    return e;
}

Real haar_exact_from_trace(Complex tr, Real dim) { return 1.0 - (std::norm(tr) + dim) / (dim * (dim + 1.0)); }

// exp(-iHt) v through the cached eigendecomposition.
Amplitudes propagate_state(const Hamiltonian& h, Real t, const Amplitudes& v) {
    const auto& q = h.eigenvectors();
    const DenseVector<Complex> phases = (h.eigenvalues().cast<Complex>() * (-kI * t)).array().exp();
    return q * (phases.asDiagonal() * (q.adjoint() * v));
}

}  // namespace

std::string to_string(CostKind kind) {
    switch (kind) {
        case CostKind::TraceNormJ: return "trace_norm_J";
        case CostKind::HaarSampledC: return "haar_sampled_C";
        case CostKind::HaarExactC: return "haar_exact_C";
        case CostKind::TiccJtilde: return "ticc_Jtilde";
    }
    return "unknown";
}

CostKind cost_kind_from_string(const std::string& name) {
    for (CostKind k : {CostKind::TraceNormJ, CostKind::HaarSampledC, CostKind::HaarExactC, CostKind::TiccJtilde})
        if (to_string(k) == name) return k;
    throw Error("unknown cost kind '" + name + "'");
}

CostSpec CostSpec::trace_norm(const DenseOperator& u) {
    CostSpec c;
    c.kind = CostKind::TraceNormJ;
    c.target = u;
    return c;
}

CostSpec CostSpec::haar_sampled(const DenseOperator& u, int samples, std::uint64_t seed) {
    if (samples < 1) throw Error("sampled cost needs at least one sample");
    CostSpec c;
    c.kind = CostKind::HaarSampledC;
    c.target = u;
    c.samples = samples;
    c.seed = seed;
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(u.rows()))));
    c.states = draw_states(n, samples, seed, "cost-state");
    for (const auto& v : c.states) c.target_states.push_back(u * v);
    return c;
}

CostSpec CostSpec::haar_exact(const DenseOperator& u) {
    CostSpec c;
    c.kind = CostKind::HaarExactC;
    c.target = u;
    return c;
}

CostSpec CostSpec::ticc(const DenseOperator& forward, const DenseOperator& backward, int gamma) {
    if (gamma < 1) throw Error("TICC cost needs at least one control layer");
    CostSpec c;
    c.kind = CostKind::TiccJtilde;
    c.target = forward;
    c.target_back = backward;
    c.gamma = gamma;
    return c;
}

CostSpec CostSpec::make(CostKind kind, const Hamiltonian& h, Real t, int samples, std::uint64_t seed, int gamma) {
    CostSpec c;
    switch (kind) {
        case CostKind::TraceNormJ: c = trace_norm(exact_propagator(h, t)); break;
        case CostKind::HaarSampledC: c = haar_sampled(exact_propagator(h, t), samples, seed); break;
        case CostKind::HaarExactC: c = haar_exact(exact_propagator(h, t)); break;
        case CostKind::TiccJtilde: c = ticc(exact_propagator(h, t), exact_propagator(h, -t), gamma); break;
    }
    c.t = t;
    return c;
}

int CostSpec::n_qubits() const { return static_cast<int>(std::lround(std::log2(static_cast<double>(target.rows())))); }

Real CostSpec::scale() const {
    return (kind == CostKind::TraceNormJ || kind == CostKind::TiccJtilde) ? static_cast<Real>(target.rows()) : 1.0;
}

Real cost_trace_norm(const DenseOperator& w, const DenseOperator& target) {
    if (w.rows() != target.rows() || w.cols() != target.cols()) throw Error("dimension mismatch in trace cost");
    return -(target.adjoint() * w).trace().real();
}

Real cost_trace_norm(const Ansatz& ansatz, const DenseOperator& target) {
    check_target(ansatz, target);
    return cost_trace_norm(dense_matrix(ansatz, Branch::Full), target);
}

SampledEstimate cost_haar_sampled(const Ansatz& ansatz, const DenseOperator& target, int samples, std::uint64_t seed) {
    check_target(ansatz, target);
    if (samples < 1) throw Error("sampled cost needs at least one sample");
    const int n = ansatz.n_system();
    const auto ops = gate_ops(ansatz, Branch::Full);
    const auto states = draw_states(n, samples, seed, "cost-state");
    std::vector<Real> vals;
    for (const auto& v : states) {
        Amplitudes wv = v;
        apply_ops(ops, wv, n);
        vals.push_back(1.0 - std::norm((target * v).dot(wv)));
    }
    return mean_and_error(vals);
}

Real cost_haar_exact(const DenseOperator& w, const DenseOperator& target) {
    return haar_exact_from_trace((target.adjoint() * w).trace(), static_cast<Real>(w.rows()));
}

Real cost_ticc(const Ansatz& ansatz, const DenseOperator& forward, const DenseOperator& backward) {
    if (!ansatz.has_controls()) throw Error("TICC cost needs controlled layers; use the plain trace cost");
    check_target(ansatz, forward);
    const auto [reduced, full] = dense_branches(ansatz);
    return cost_trace_norm(full, backward) + cost_trace_norm(reduced, forward);
}

Real cost_ticc(const Ansatz& ansatz, const Hamiltonian& h, Real t) {
    return cost_ticc(ansatz, exact_propagator(h, t), exact_propagator(h, -t));
}

Real evaluate(const Ansatz& ansatz, const CostSpec& spec) {
    check_target(ansatz, spec.target);
    Real v = 0.0;
    switch (spec.kind) {
        case CostKind::TraceNormJ: v = cost_trace_norm(dense_matrix(ansatz, Branch::Full), spec.target); break;
        case CostKind::HaarExactC: v = cost_haar_exact(dense_matrix(ansatz, Branch::Full), spec.target); break;
        case CostKind::TiccJtilde: v = cost_ticc(ansatz, spec.target, spec.target_back); break;
        case CostKind::HaarSampledC: {
            const int n = ansatz.n_system();
            const auto ops = gate_ops(ansatz, Branch::Full);
            Real acc = 0.0;
            for (std::size_t s = 0; s < spec.states.size(); ++s) {
                Amplitudes wv = spec.states[s];
                apply_ops(ops, wv, n);
                acc += std::norm(spec.target_states[s].dot(wv));
            }
            v = 1.0 - acc / static_cast<Real>(spec.states.size());
            break;
        }
    }
    require_finite(v, "cost value");
    return v;
}

Gradient gradient(const Ansatz& ansatz, const CostSpec& spec) {
    check_target(ansatz, spec.target);
    const int n = ansatz.n_system();
    const int layers = ansatz.depth();
    Gradient g;
    g.euclidean.assign(static_cast<std::size_t>(layers), Gate::Zero());
    auto add = [&](const std::vector<Gate>& env, Complex factor) {
        for (int j = 0; j < layers; ++j) g.euclidean[j] += factor * env[j].adjoint();
    };
    switch (spec.kind) {
        case CostKind::TraceNormJ: {
            const Sweep s = trace_sweep(gate_ops(ansatz, Branch::Full), n, spec.target, layers);
            g.cost = -s.value.real();
            add(s.env, -1.0);
            break;
        }
        case CostKind::HaarExactC: {
            const Sweep s = trace_sweep(gate_ops(ansatz, Branch::Full), n, spec.target, layers);
            const Real d = static_cast<Real>(spec.target.rows());
            g.cost = haar_exact_from_trace(s.value, d);
            add(s.env, -2.0 / (d * (d + 1.0)) * s.value);
            break;
        }
        case CostKind::HaarSampledC: {
            const auto ops = gate_ops(ansatz, Branch::Full);
            const Real inv = 1.0 / static_cast<Real>(spec.states.size());
            Real acc = 0.0;
            for (std::size_t k = 0; k < spec.states.size(); ++k) {
                const Sweep s = state_sweep(ops, n, spec.states[k], spec.target_states[k], layers);
                acc += std::norm(s.value);
                add(s.env, -2.0 * inv * s.value);
            }
            g.cost = 1.0 - acc * inv;
            break;
        }
        case CostKind::TiccJtilde: {
            if (!ansatz.has_controls()) throw Error("TICC cost needs controlled layers; use the plain trace cost");
            const Sweep full = trace_sweep(gate_ops(ansatz, Branch::Full), n, spec.target_back, layers);
            const Sweep red = trace_sweep(gate_ops(ansatz, Branch::Reduced), n, spec.target, layers);
            g.cost = -full.value.real() - red.value.real();
            add(full.env, -1.0);
            add(red.env, -1.0);
            break;
        }
    }
    require_finite(g.cost, "cost value");
    Real sq = 0.0;
    for (int j = 0; j < layers; ++j) {
        Gate omega = project_su(Gate(ansatz.layer(j).gate.adjoint() * g.euclidean[j]));
        sq += omega.squaredNorm();
        g.riemannian.push_back(omega);
    }
    g.norm = std::sqrt(sq);
    require_finite(g.norm, "gradient");
    return g;
}

Ansatz retract(const Ansatz& ansatz, const std::vector<Gate>& omega, Real step) {
    Ansatz out = ansatz;
    for (int j = 0; j < ansatz.depth(); ++j) {
        const Gate u = ansatz.layer(j).gate * expm_skew(Gate(-step * omega[j]));
        out.set_gate(j, su_normalize(u));
    }
    return out;
}

OptimizationRun descend(const Ansatz& initial, const CostSpec& spec, const DescendConfig& cfg, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    OptimizationRun run;
    run.initial = initial;
    run.seed = seed;
    const Real tol = cfg.grad_tol * spec.scale();
    // cost differences below this are rounding noise
    const Real noise = 64.0 * std::numeric_limits<Real>::epsilon() * spec.scale();

    Ansatz cur = initial;
    Gradient g = gradient(cur, spec);
    Real cur_cost = g.cost;
    Real step = cfg.initial_step;
    for (int it = 0;; ++it) {
        run.cost_trace.push_back({it, cur_cost, g.norm});
        run.iterations = it;
        if (g.norm <= tol) {
            run.converged = true;
            run.stop_reason = "gradient";
            break;
        }
        if (it >= cfg.max_iters) {
            run.stop_reason = "max_iters";
            break;
        }
        const Real g2 = g.norm * g.norm;
        bool accepted = false;
        Ansatz trial;
        Gradient gt;
        Real f = cur_cost;
        for (int b = 0; b <= cfg.max_backtracks; ++b) {
            trial = retract(cur, g.riemannian, step);
            f = evaluate(trial, spec);
            const bool armijo = f <= cur_cost - cfg.armijo_c * step * g2;
            const bool flat = f <= cur_cost && cfg.armijo_c * step * g2 < noise;
            if (armijo || flat) {
                gt = gradient(trial, spec);
                if (armijo || gt.norm < g.norm) {
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) {
            run.stop_reason = "line_search";
            break;
        }
        Real next = 2.0 * step;
        if (cfg.bb_steps) {
            std::vector<Gate> s_vec, y_vec;
            for (std::size_t j = 0; j < g.riemannian.size(); ++j) {
                s_vec.push_back(-step * g.riemannian[j]);
                y_vec.push_back(gt.riemannian[j] - g.riemannian[j]);
            }
            const Real sy = inner(s_vec, y_vec);
            if (sy > 0.0) next = std::clamp(inner(s_vec, s_vec) / sy, 1e-12, 1e6);
        }
        step = next;
        cur = std::move(trial);
        g = std::move(gt);
        cur_cost = f;
    }
    run.final = cur;
    run.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

Theorem1Report theorem1_check(const Ansatz& initial, const Hamiltonian& h, Real dt) {
    if (!(dt > 0.0)) throw Error("time step must be positive");
    if (initial.n_system() != h.n_qubits()) throw Error("circuit and Hamiltonian widths differ");
    Theorem1Report r;
    r.dt = dt;
    r.hamiltonian_norm = spectral_norm(h);
    for (const auto& l : initial.layers())
        if (!l.controlled) r.instances += initial.lattice().class_at(l.class_index).bond_count();
    if (r.instances == 0) throw Error("circuit has no uncontrolled gate instances");
    r.budget = r.hamiltonian_norm / r.instances;
    r.all_within_budget = true;
    constexpr Real kMargin = 1e-6;
    for (const auto& l : initial.layers()) {
        const DenseOperator g = l.gate;
        const bool ok = principal_log_ok(g, kMargin);
        if (!ok) throw NumericalError("gate has an eigenvalue at -1; principal logarithm undefined");
        const UnitarySpectrum sp = unitary_spectrum(g);
        const Real norm = sp.phases.cwiseAbs().maxCoeff() / dt;
        const bool within = norm <= r.budget * (1.0 + 1e-12);
        r.per_layer_norms.push_back(norm);
        r.principal_log_ok.push_back(ok);
        r.within_budget.push_back(within);
        r.all_within_budget = r.all_within_budget && within;
        if (!l.controlled) r.magnus_sum += initial.lattice().class_at(l.class_index).bond_count() * norm;
    }
    return r;
}

Ansatz random_generator_init(const Lattice& lattice, int layers, Real dt, Real norm_cap, std::uint64_t seed) {
    if (layers < 1) throw Error("need at least one layer");
    if (!(norm_cap >= 0.0)) throw Error("norm cap must be non-negative");
    Rng rng(seed);
    std::vector<Gate> gens;
    Real magnus = 0.0;
    for (int j = 0; j < layers; ++j) {
        const Gate h = random_traceless_hermitian<4>(rng);
        gens.push_back(h);
        magnus += lattice.class_at(j % lattice.class_count()).bond_count() * spectral_norm_hermitian(h);
    }
    const Real c = magnus > 0.0 ? norm_cap / magnus : 0.0;
    std::vector<Layer> out;
    for (int j = 0; j < layers; ++j) out.push_back({expm_hermitian(gens[j], dt * c), j % lattice.class_count(), false});
    return Ansatz(lattice, std::move(out));
}

std::vector<Cluster> cluster_unitaries(const std::vector<DenseOperator>& endpoints, const std::vector<Real>& costs,
                                       Real tol) {
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < endpoints.size(); ++i) {
        bool placed = false;
        for (auto& c : clusters) {
            if (phase_aligned_distance(endpoints[static_cast<std::size_t>(c.representative)], endpoints[i]) < tol) {
                ++c.size;
                c.best_cost = std::min(c.best_cost, costs[i]);
                c.worst_cost = std::max(c.worst_cost, costs[i]);
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({1, static_cast<int>(i), costs[i], costs[i]});
    }
    return clusters;
}

std::vector<SweepPoint> tcrit_sweep(const SweepConfig& cfg) {
    if (cfg.searches < 2) throw Error("a sweep needs at least two searches per time step");
    if (cfg.dts.empty()) throw Error("empty time-step grid");
    const int layers = cfg.layers > 0 ? cfg.layers : cfg.lattice.class_count();
    const std::size_t n_dt = cfg.dts.size();

    std::vector<std::uint64_t> h_seeds(n_dt);
    std::vector<DenseOperator> targets(n_dt);
    for (std::size_t i = 0; i < n_dt; ++i) {
        h_seeds[i] = substream_seed(cfg.seed, "hamiltonian", {cfg.fixed_hamiltonian ? 0 : i});
        const Hamiltonian h = random_two_local_ti(cfg.lattice, h_seeds[i], cfg.target_norm);
        targets[i] = exact_propagator(h, cfg.dts[i]);
    }

    const std::size_t per = static_cast<std::size_t>(cfg.searches);
    const std::size_t total = n_dt * per;
    std::vector<DenseOperator> endpoints(total);
    std::vector<Real> costs(total);
    std::vector<int> converged(total), iterations(total);
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(total);

    auto worker = [&] {
        for (std::size_t task; (task = next.fetch_add(1)) < total;) {
            const std::size_t i = task / per, s = task % per;
            try {
                const std::uint64_t seed = substream_seed(cfg.seed, "search", {i, s});
                const Ansatz init = random_generator_init(cfg.lattice, layers, cfg.dts[i], cfg.norm_cap, seed);
                const CostSpec spec = CostSpec::trace_norm(targets[i]);
                const OptimizationRun run = descend(init, spec, cfg.descend, seed);
                endpoints[task] = dense_matrix(run.final);
                costs[task] = run.final_cost();
                converged[task] = run.converged ? 1 : 0;
                iterations[task] = run.iterations;
            } catch (const std::exception& e) {
                errors[task] = e.what();
            }
        }
    };
    const int threads = std::max(1, cfg.threads);
    std::vector<std::thread> pool;
    for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (!e.empty()) throw NumericalError("sweep search failed: " + e);

    std::vector<SweepPoint> out;
    for (std::size_t i = 0; i < n_dt; ++i) {
        SweepPoint p;
        p.dt = cfg.dts[i];
        p.searches = cfg.searches;
        p.hamiltonian_seed = h_seeds[i];
        std::vector<DenseOperator> ends(endpoints.begin() + i * per, endpoints.begin() + (i + 1) * per);
        std::vector<Real> cs(costs.begin() + i * per, costs.begin() + (i + 1) * per);
        p.cluster_list = cluster_unitaries(ends, cs, cfg.cluster_tol);
        p.clusters = static_cast<int>(p.cluster_list.size());
        p.best_cost = *std::min_element(cs.begin(), cs.end());
        p.worst_cost = *std::max_element(cs.begin(), cs.end());
        Real it_sum = 0.0;
        for (std::size_t s = 0; s < per; ++s) {
            p.converged += converged[i * per + s];
            it_sum += iterations[i * per + s];
        }
        p.mean_iterations = it_sum / static_cast<Real>(per);
        out.push_back(std::move(p));
    }
    return out;
}

OptimizationRun bootstrap(const OptimizationRun& block_run, Real dt, Real t_total, bool reoptimize,
                          const CostSpec& spec, const DescendConfig& config) {
    if (!(dt > 0.0) || !(t_total > 0.0)) throw Error("times must be positive");
    const Real ratio = t_total / dt;
    const long k = std::lround(ratio);
    if (k < 1 || std::abs(ratio - static_cast<Real>(k)) > 1e-9 * std::max(1.0, ratio))
        throw Error("t_total / dt must be a positive integer");
    const Ansatz repeated = repeat_blocks(block_run.final, static_cast<int>(k));
    if (reoptimize) {
        OptimizationRun run = descend(repeated, spec, config, block_run.seed);
        run.final.set_block_info(repeated.repetitions(), repeated.block_depth());
        return run;
    }
    OptimizationRun run;
    run.initial = repeated;
    run.final = repeated;
    run.seed = block_run.seed;
    run.converged = block_run.converged;
    run.stop_reason = "repeated";
    const Gradient g = gradient(repeated, spec);
    run.cost_trace.push_back({0, g.cost, g.norm});
    return run;
}

SampledEstimate evolution_infidelity(const DenseOperator& u, const Hamiltonian& h, Real t, int samples,
                                     std::uint64_t seed) {
    const int n = h.n_qubits();
    if (u.rows() != static_cast<Eigen::Index>(dim_of(n))) throw Error("operator dimension does not match Hamiltonian");
    if (samples < 1) throw Error("need at least one sample");
    const auto states = draw_states(n, samples, seed, "infidelity-state");
    std::vector<Real> vals;
    for (const auto& v : states) vals.push_back(1.0 - std::norm(propagate_state(h, t, v).dot(u * v)));
    return mean_and_error(vals);
}

SampledEstimate evolution_infidelity(const Ansatz& ansatz, const Hamiltonian& h, Real t, int samples,
                                     std::uint64_t seed) {
    const int n = h.n_qubits();
    if (ansatz.n_system() != n) throw Error("circuit and Hamiltonian widths differ");
    if (samples < 1) throw Error("need at least one sample");
    const auto states = draw_states(n, samples, seed, "infidelity-state");
    const auto fwd = gate_ops(ansatz, Branch::Reduced);
    const auto full = gate_ops(ansatz, Branch::Full);
    std::vector<Real> vals;
    for (const auto& v : states) {
        Amplitudes wv = v;
        apply_ops(fwd, wv, n);
        Real x = 1.0 - std::norm(propagate_state(h, t, v).dot(wv));
        if (ansatz.has_controls()) {
            Amplitudes bv = v;
            apply_ops(full, bv, n);
            x = 0.5 * (x + 1.0 - std::norm(propagate_state(h, -t, v).dot(bv)));
        }
        vals.push_back(x);
    }
    return mean_and_error(vals);
}

Real evolution_infidelity_exact(const DenseOperator& u, const Hamiltonian& h, Real t) {
    return cost_haar_exact(u, exact_propagator(h, t));
}

Real evolution_infidelity_exact(const Ansatz& ansatz, const Hamiltonian& h, Real t) {
    if (!ansatz.has_controls()) return evolution_infidelity_exact(dense_matrix(ansatz), h, t);
    const auto [reduced, full] = dense_branches(ansatz);
    return 0.5 * (evolution_infidelity_exact(reduced, h, t) + evolution_infidelity_exact(full, h, -t));
}

}  // namespace qcomp
