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


#include "qcomp/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "qcomp/bgate.hpp"
#include "qcomp/circuit.hpp"
#include "qcomp/hamiltonian.hpp"
#include "qcomp/lattice.hpp"
#include "qcomp/optimize.hpp"
#include "qcomp/pauliprop.hpp"
#include "qcomp/rng.hpp"
#include "qcomp/trotter.hpp"

#ifndef QCOMP_BUILD_ID
#define QCOMP_BUILD_ID "unknown"
#endif

namespace qcomp {

using json = nlohmann::ordered_json;

namespace {

std::string fmt(Real v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Real to_real(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const Real x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || !std::isfinite(x)) throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0') throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    char* end = nullptr;
    if (v.empty() || v[0] == '-') throw ConfigError("key '" + key + "': expected a non-negative integer");
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (*end != '\0') throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    if (trim(v).empty()) return out;
    std::stringstream ss(v);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(trim(item));
    return out;
}

struct Field {
    std::string key;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Field string_field(std::string key, T ExperimentConfig::*m) {
    return {key, [m](ExperimentConfig& c, const std::string& v) { c.*m = v; },
            [m](const ExperimentConfig& c) { return c.*m; }};
}

Field real_field(std::string key, Real ExperimentConfig::*m) {
    return {key, [m, key](ExperimentConfig& c, const std::string& v) { c.*m = to_real(key, v); },
            [m](const ExperimentConfig& c) { return fmt(c.*m); }};
}

Field int_field(std::string key, int ExperimentConfig::*m) {
    return {key, [m, key](ExperimentConfig& c, const std::string& v) { c.*m = static_cast<int>(to_int(key, v)); },
            [m](const ExperimentConfig& c) { return std::to_string(c.*m); }};
}

Field bool_field(std::string key, bool ExperimentConfig::*m) {
    return {key, [m, key](ExperimentConfig& c, const std::string& v) { c.*m = to_bool(key, v); },
            [m](const ExperimentConfig& c) { return std::string(c.*m ? "true" : "false"); }};
}

Field real_list_field(std::string key, std::vector<Real> ExperimentConfig::*m) {
    return {key,
            [m, key](ExperimentConfig& c, const std::string& v) {
                (c.*m).clear();
                for (const auto& item : split_list(v)) (c.*m).push_back(to_real(key, item));
            },
            [m](const ExperimentConfig& c) {
                std::string s;
                for (std::size_t i = 0; i < (c.*m).size(); ++i) s += (i ? ", " : "") + fmt((c.*m)[i]);
                return s;
            }};
}

Field int_list_field(std::string key, std::vector<int> ExperimentConfig::*m) {
    return {key,
            [m, key](ExperimentConfig& c, const std::string& v) {
                (c.*m).clear();
                for (const auto& item : split_list(v)) (c.*m).push_back(static_cast<int>(to_int(key, item)));
            },
            [m](const ExperimentConfig& c) {
                std::string s;
                for (std::size_t i = 0; i < (c.*m).size(); ++i) s += (i ? ", " : "") + std::to_string((c.*m)[i]);
                return s;
            }};
}

const std::vector<Field>& fields() {
    using C = ExperimentConfig;
    static const std::vector<Field> f = {
        string_field("subcommand", &C::subcommand),
        string_field("lattice", &C::lattice),
        string_field("target_lattice", &C::target_lattice),
        string_field("hamiltonian", &C::hamiltonian),
        real_field("target_norm", &C::target_norm),
        real_field("dt", &C::dt),
        real_field("t", &C::t),
        real_list_field("dt_grid", &C::dt_grid),
        int_field("max_iters", &C::max_iters),
        real_field("grad_tol", &C::grad_tol),
        real_field("initial_step", &C::initial_step),
        bool_field("bb_steps", &C::bb_steps),
        string_field("cost", &C::cost),
        int_field("samples", &C::samples),
        int_field("gamma", &C::gamma),
        int_field("searches", &C::searches),
        int_field("layers", &C::layers),
        real_field("norm_cap", &C::norm_cap),
        bool_field("fixed_hamiltonian", &C::fixed_hamiltonian),
        real_field("cluster_tol", &C::cluster_tol),
        bool_field("reoptimize", &C::reoptimize),
        int_field("infidelity_samples", &C::infidelity_samples),
        int_list_field("trotter_orders", &C::trotter_orders),
        int_list_field("trotter_steps", &C::trotter_steps),
        string_field("trotter_partition", &C::trotter_partition),
        string_field("circuit", &C::circuit),
        real_list_field("kappas", &C::kappas),
        int_field("target_order", &C::target_order),
        int_field("target_steps", &C::target_steps),
        bool_field("controlled", &C::controlled),
        real_field("detuning_error", &C::detuning_error),
        {"seed", [](C& c, const std::string& v) { c.seed = to_u64("seed", v); },
         [](const C& c) { return std::to_string(c.seed); }},
        int_field("threads", &C::threads),
        string_field("out", &C::out),
    };
    return f;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig c;
    std::map<std::string, const Field*> index;
    for (const auto& f : fields()) index[f.key] = &f;
    std::map<std::string, int> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto it = index.find(key);
        if (it == index.end()) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (seen.count(key)) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        seen[key] = line_no;
        it->second->set(c, value);
    }
    return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& c) {
    std::string s;
    for (const auto& f : fields()) s += f.key + " = " + f.get(c) + "\n";
    return s;
}

void validate_config(const ExperimentConfig& c) {
    static const std::vector<std::string> subs = {"tcrit-sweep", "compress", "transfer", "bgate-check", "validate-lattice",
                                                "trotter"};
    if (std::find(subs.begin(), subs.end(), c.subcommand) == subs.end())
        throw ConfigError("unknown subcommand '" + c.subcommand + "'");
    if (c.hamiltonian != "heisenberg_field" && c.hamiltonian != "random_ti")
        throw ConfigError("hamiltonian must be heisenberg_field or random_ti");
    if (c.trotter_partition != "classes" && c.trotter_partition != "sectors")
        throw ConfigError("trotter_partition must be classes or sectors");
    try {
        cost_kind_from_string(c.cost);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (!(c.target_norm > 0)) throw ConfigError("target_norm must be positive");
    if (!(c.dt > 0) || !(c.t > 0)) throw ConfigError("dt and t must be positive");
    if (c.max_iters < 0) throw ConfigError("max_iters must be non-negative");
    if (!(c.grad_tol > 0)) throw ConfigError("grad_tol must be positive");
    if (!(c.initial_step > 0)) throw ConfigError("initial_step must be positive");
    if (c.samples < 1 || c.infidelity_samples < 1) throw ConfigError("sample counts must be at least 1");
    if (c.gamma < 0) throw ConfigError("gamma must be non-negative");
    if (c.layers < 0) throw ConfigError("layers must be non-negative");
    if (c.threads < 1) throw ConfigError("threads must be at least 1");
    if (!(c.norm_cap >= 0)) throw ConfigError("norm_cap must be non-negative");
    if (!(c.cluster_tol > 0)) throw ConfigError("cluster_tol must be positive");
    for (Real k : c.kappas)
        if (!(k >= 0)) throw ConfigError("kappas must be non-negative");
    for (int o : c.trotter_orders)
        if (o != 1 && o != 2 && o != 4) throw ConfigError("trotter_orders entries must be 1, 2 or 4");
    for (int s : c.trotter_steps)
        if (s < 1) throw ConfigError("trotter_steps entries must be at least 1");
    if (c.target_order != 1 && c.target_order != 2 && c.target_order != 4) throw ConfigError("target_order must be 1, 2 or 4");
    if (c.target_steps < 1) throw ConfigError("target_steps must be at least 1");
    if (c.subcommand == "tcrit-sweep") {
        if (c.searches < 2) throw ConfigError("searches must be at least 2");
        if (c.dt_grid.empty()) throw ConfigError("dt_grid must not be empty");
        for (Real d : c.dt_grid)
            if (!(d > 0)) throw ConfigError("dt_grid entries must be positive");
    }
    if (c.subcommand == "transfer" && c.circuit.empty()) throw ConfigError("transfer needs a circuit file");
}

std::string build_id() { return QCOMP_BUILD_ID; }

const std::string& RunOutput::file(const std::string& name) const {
    for (const auto& [n, content] : files)
        if (n == name) return content;
    throw Error("run produced no file named " + name);
}

namespace {

Lattice lattice_from(const std::string& spec) {
    try {
        return resolve_lattice(spec);
    } catch (const NumericalError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("lattice '") + spec + "': " + e.what());
    }
}

Hamiltonian hamiltonian_from(const ExperimentConfig& c, const Lattice& lat) {
    if (c.hamiltonian == "heisenberg_field") return heisenberg_field(lat);
    return random_two_local_ti(lat, substream_seed(c.seed, "hamiltonian"), c.target_norm);
}

DescendConfig descend_from(const ExperimentConfig& c) {
    DescendConfig d;
    d.max_iters = c.max_iters;
    d.grad_tol = c.grad_tol;
    d.initial_step = c.initial_step;
    d.bb_steps = c.bb_steps;
    return d;
}

json header(const ExperimentConfig& c) {
    json j;
    j["subcommand"] = c.subcommand;
    j["seed"] = c.seed;
    j["build_id"] = build_id();
    j["config"] = serialize_config(c);
    return j;
}

Partition partition_for(const ExperimentConfig& c, const Hamiltonian& h, bool controlled) {
    if (controlled || c.trotter_partition == "sectors") return hm_partition(h);
    return class_partition(h);
}

json theorem1_json(const Theorem1Report& r) {
    json j;
    j["dt"] = r.dt;
    j["hamiltonian_norm"] = r.hamiltonian_norm;
    j["instances"] = r.instances;
    j["budget"] = r.budget;
    j["per_layer_norms"] = r.per_layer_norms;
    j["within_budget"] = r.within_budget;
    j["principal_log_ok"] = r.principal_log_ok;
    j["magnus_sum"] = r.magnus_sum;
    j["all_within_budget"] = r.all_within_budget;
    return j;
}

std::string circuit_text(const Ansatz& a) {
    std::ostringstream os;
    write_circuit(os, a);
    return os.str();
}

}  // namespace

RunOutput run_tcrit(const ExperimentConfig& c) {
    validate_config(c);
    SweepConfig sc;
    sc.lattice = lattice_from(c.lattice);
    sc.dts = c.dt_grid;
    sc.searches = c.searches;
    sc.layers = c.layers;
    sc.norm_cap = c.norm_cap;
    sc.target_norm = c.target_norm;
    sc.seed = c.seed;
    sc.threads = c.threads;
    sc.fixed_hamiltonian = c.fixed_hamiltonian;
    sc.cluster_tol = c.cluster_tol;
    sc.descend = descend_from(c);
    const auto points = tcrit_sweep(sc);

    std::ostringstream csv, clusters, report;
    csv << "dt,searches,converged,clusters,best_cost,worst_cost,mean_iterations,hamiltonian_seed\n";
    clusters << "dt,cluster,size,best_cost,worst_cost\n";
    json j = header(c);
    j["lattice"] = sc.lattice.name();
    j["layers"] = sc.layers > 0 ? sc.layers : sc.lattice.class_count();
    json pts = json::array();
    for (const auto& p : points) {
        csv << fmt(p.dt) << "," << p.searches << "," << p.converged << "," << p.clusters << "," << fmt(p.best_cost) << ","
            << fmt(p.worst_cost) << "," << fmt(p.mean_iterations) << "," << p.hamiltonian_seed << "\n";
        for (std::size_t k = 0; k < p.cluster_list.size(); ++k) {
            const auto& cl = p.cluster_list[k];
            clusters << fmt(p.dt) << "," << k << "," << cl.size << "," << fmt(cl.best_cost) << "," << fmt(cl.worst_cost)
                     << "\n";
        }
        pts.push_back({{"dt", p.dt}, {"clusters", p.clusters}, {"converged", p.converged}, {"best_cost", p.best_cost}});
        report << "dt " << fmt(p.dt) << ": " << p.clusters << " cluster(s), " << p.converged << "/" << p.searches
               << " converged\n";
    }
    j["points"] = pts;
    RunOutput out;
    out.files = {{"tcrit.csv", csv.str()}, {"clusters.csv", clusters.str()}, {"summary.json", j.dump(2) + "\n"}};
    out.report = report.str();
    return out;
}

RunOutput run_compress(const ExperimentConfig& c) {
    validate_config(c);
    const Lattice lat = lattice_from(c.lattice);
    const Hamiltonian h = hamiltonian_from(c, lat);
    const int layers = c.layers > 0 ? c.layers : lat.class_count();
    const bool controlled = c.gamma > 0;
    const Real ratio = c.t / c.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio) || std::round(ratio) < 1)
        throw ConfigError("t / dt must be a positive integer");

    const Ansatz init = trotter_init_point(h, c.dt, layers, c.gamma);
    const Theorem1Report thm = theorem1_check(init, h, c.dt);
    std::ostringstream report;
    if (!thm.all_within_budget) report << "warning: initialization outside the Theorem-1 budget\n";

    const CostKind kind = controlled ? CostKind::TiccJtilde : cost_kind_from_string(c.cost);
    const std::uint64_t cost_seed = substream_seed(c.seed, "cost");
    const CostSpec block_spec = CostSpec::make(kind, h, c.dt, c.samples, cost_seed, c.gamma);
    const DescendConfig dcfg = descend_from(c);
    const OptimizationRun block = descend(init, block_spec, dcfg, c.seed);
    const CostSpec full_spec = CostSpec::make(kind, h, c.t, c.samples, cost_seed, c.gamma);
    const OptimizationRun repeated = bootstrap(block, c.dt, c.t, false, full_spec, dcfg);
    const OptimizationRun final_run = c.reoptimize ? bootstrap(block, c.dt, c.t, true, full_spec, dcfg) : repeated;

    const std::uint64_t inf_seed = substream_seed(c.seed, "infidelity");
    std::ostringstream csv;
    csv << "method,order,steps,layers,controlled_layers,b_gates,cz_gates,longest_path,t,infidelity,infidelity_stderr,"
           "infidelity_exact\n";
    auto row = [&](const std::string& method, int order, int steps, const Ansatz& a, Real t) {
        const GateCounts gc = gate_counts(a);
        const SampledEstimate e = evolution_infidelity(a, h, t, c.infidelity_samples, inf_seed);
        csv << method << "," << order << "," << steps << "," << a.depth() << "," << a.controlled_count() << ","
            << gc.b_gates << "," << gc.cz_gates << "," << gc.longest_path << "," << fmt(t) << "," << fmt(e.value) << ","
            << fmt(e.std_error) << "," << fmt(evolution_infidelity_exact(a, h, t)) << "\n";
        return e.value;
    };
    row("optimized_block", 0, 1, block.final, c.dt);
    row("repeated", 0, repeated.final.repetitions(), repeated.final, c.t);
    if (c.reoptimize) row("reoptimized", 0, final_run.final.repetitions(), final_run.final, c.t);
    const Partition part = partition_for(c, h, controlled);
    for (int order : c.trotter_orders)
        for (int steps : c.trotter_steps) row("trotter", order, steps, trotter_circuit(part, c.t, order, steps, controlled), c.t);

    std::ostringstream trace;
    trace << "stage,iteration,cost,grad_norm\n";
    for (const auto& p : block.cost_trace) trace << "block," << p.iteration << "," << fmt(p.cost) << "," << fmt(p.grad_norm) << "\n";
    if (c.reoptimize)
        for (const auto& p : final_run.cost_trace)
            trace << "reoptimize," << p.iteration << "," << fmt(p.cost) << "," << fmt(p.grad_norm) << "\n";

    json j = header(c);
    j["lattice"] = lat.name();
    j["cost"] = to_string(kind);
    j["theorem1"] = theorem1_json(thm);
    j["block"] = {{"converged", block.converged}, {"iterations", block.iterations}, {"stop_reason", block.stop_reason},
                  {"final_cost", block.final_cost()}};
    j["final"] = {{"converged", final_run.converged}, {"iterations", final_run.iterations},
                  {"stop_reason", final_run.stop_reason}, {"final_cost", final_run.final_cost()},
                  {"repetitions", final_run.final.repetitions()}};
    j["field_layering"] = "field rotations fused into neighbouring perfect-matching layers";
    j["trotter_partition"] = controlled ? "sectors" : c.trotter_partition;

    report << "block: " << (block.converged ? "converged" : "not converged") << " after " << block.iterations
           << " iterations, cost " << fmt(block.final_cost()) << "\n";
    RunOutput out;
    out.files = {{"compress.csv", csv.str()},
                 {"cost_trace.csv", trace.str()},
                 {"block.circuit", circuit_text(block.final)},
                 {"optimized.circuit", circuit_text(final_run.final)},
                 {"summary.json", j.dump(2) + "\n"}};
    out.report = report.str();
    return out;
}

RunOutput run_transfer(const ExperimentConfig& c) {
    validate_config(c);
    if (!std::filesystem::exists(c.circuit)) throw ConfigError("circuit file not found: " + c.circuit);
    const Ansatz block = load_circuit(c.circuit);
    const Lattice target_lat = lattice_from(c.target_lattice);
    Ansatz moved;
    try {
        moved = transfer(block, target_lat);
    } catch (const NumericalError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    const Hamiltonian h = hamiltonian_from(c, target_lat);
    const int n = target_lat.n_sites();
    const Real t = c.dt * block.repetitions();
    const Ansatz target = trotter_circuit(partition_for(c, h, false), t, c.target_order, c.target_steps, false);
    const auto target_ops = gate_ops(target);
    const auto approx_ops = gate_ops(moved, Branch::Reduced);

    std::string dense_col;
    if (n <= 6) {
        const LocalInfidelity d =
            local_infidelity(weight_one_images(dense_matrix(target), n), weight_one_images(dense_matrix(moved, Branch::Reduced), n), n);
        dense_col = fmt(d.i_loc);
    }
    std::ostringstream csv, report;
    csv << "kappa,max_terms,total_terms,c1loc,i_loc,dense_i_loc\n";
    json j = header(c);
    j["source_lattice"] = block.lattice().name();
    j["target_lattice"] = target_lat.name();
    j["t"] = t;
    json rows = json::array();
    for (Real kappa : c.kappas) {
        PropagationConfig pc;
        pc.kappa = kappa;
        const LocalInfidelity li = local_infidelity(target_ops, approx_ops, n, pc, c.threads);
        csv << fmt(kappa) << "," << li.max_terms << "," << li.total_terms << "," << fmt(li.c1loc) << "," << fmt(li.i_loc)
            << "," << dense_col << "\n";
        rows.push_back({{"kappa", kappa}, {"i_loc", li.i_loc}, {"max_terms", li.max_terms}});
        report << "kappa " << fmt(kappa) << ": I_loc " << fmt(li.i_loc) << " (" << li.max_terms << " terms)\n";
    }
    j["rows"] = rows;
    RunOutput out;
    out.files = {{"transfer.csv", csv.str()}, {"transferred.circuit", circuit_text(moved)}, {"summary.json", j.dump(2) + "\n"}};
    out.report = report.str();
    return out;
}

RunOutput run_trotter(const ExperimentConfig& c) {
    validate_config(c);
    const Lattice lat = lattice_from(c.lattice);
    const Hamiltonian h = hamiltonian_from(c, lat);
    const Ansatz a = trotter_circuit(partition_for(c, h, c.controlled), c.t, c.target_order, c.target_steps, c.controlled);
    const GateCounts gc = gate_counts(a);
    std::ostringstream csv;
    csv << "order,steps,controlled,layers,b_gates,cz_gates,longest_path,infidelity_exact\n";
    csv << c.target_order << "," << c.target_steps << "," << (c.controlled ? "true" : "false") << "," << a.depth() << ","
        << gc.b_gates << "," << gc.cz_gates << "," << gc.longest_path << ","
        << (lat.n_sites() <= 8 ? fmt(evolution_infidelity_exact(a, h, c.t)) : std::string()) << "\n";
    json j = header(c);
    j["lattice"] = lat.name();
    j["layers"] = a.depth();
    j["field_layering"] = "field rotations fused into neighbouring perfect-matching layers";
    RunOutput out;
    out.files = {{"trotter.csv", csv.str()}, {"trotter.circuit", circuit_text(a)}, {"summary.json", j.dump(2) + "\n"}};
    out.report = csv.str();
    return out;
}

RunOutput run_bgate(const ExperimentConfig& c) {
    validate_config(c);
    const BGateCheck r = verify_b(c.detuning_error);
    json j = header(c);
    j["result"] = json::parse(to_json(r));
    std::ostringstream csv;
    csv << "detuning_error,distance,lambda,theta,even_residual,odd_residual,pass\n";
    csv << fmt(c.detuning_error) << "," << fmt(r.distance) << "," << fmt(r.lambda) << "," << fmt(r.theta) << ","
        << fmt(r.even_residual) << "," << fmt(r.odd_residual) << "," << (r.pass ? "true" : "false") << "\n";
    RunOutput out;
    out.files = {{"bgate.csv", csv.str()}, {"bgate.json", to_json(r) + "\n"}, {"summary.json", j.dump(2) + "\n"}};
    out.report = to_json(r) + "\n";
    return out;
}

RunOutput run_validate_lattice(const ExperimentConfig& c) {
    validate_config(c);
    const Lattice lat = lattice_from(c.lattice);
    const LatticeReport rep = validate(lat);
    json j = header(c);
    j["name"] = lat.name();
    j["sites"] = lat.n_sites();
    j["classes"] = lat.class_count();
    j["physical_depth"] = lat.physical_depth();
    j["bonds"] = lat.bond_count();
    j["degrees"] = lat.degrees();
    j["valid"] = rep.valid;
    j["violations"] = rep.violations;
    std::ostringstream csv;
    csv << "class,permutations,bonds,perfect_matching\n";
    for (int k = 0; k < lat.class_count(); ++k) {
        const auto& cl = lat.class_at(k);
        csv << k << "," << cl.permutations.size() << "," << cl.bond_count() << ","
            << (cl.is_perfect_matching(lat.n_sites()) ? "true" : "false") << "\n";
    }
    RunOutput out;
    out.files = {{"lattice.csv", csv.str()}, {"summary.json", j.dump(2) + "\n"}};
    std::ostringstream report;
    report << lat.name() << ": " << lat.n_sites() << " sites, " << lat.class_count() << " classes, " << lat.bond_count()
           << " bonds, " << (rep.valid ? "valid" : "INVALID") << "\n";
    for (const auto& v : rep.violations) report << "  " << v << "\n";
    out.report = report.str();
    out.exit_code = rep.valid ? 0 : 1;
    return out;
}

RunOutput run_experiment(const ExperimentConfig& c) {
    if (c.subcommand == "tcrit-sweep") return run_tcrit(c);
    if (c.subcommand == "compress") return run_compress(c);
    if (c.subcommand == "transfer") return run_transfer(c);
    if (c.subcommand == "bgate-check") return run_bgate(c);
    if (c.subcommand == "validate-lattice") return run_validate_lattice(c);
    if (c.subcommand == "trotter") return run_trotter(c);
    throw ConfigError("unknown subcommand '" + c.subcommand + "'");
}

void write_output(const RunOutput& output, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : output.files) {
        const auto path = std::filesystem::path(dir) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path.string());
        f << content;
    }
}

}  // namespace qcomp
