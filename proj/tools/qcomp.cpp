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


// Command-line runner for the qcomp experiments.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qcomp/experiment.hpp"
#include "qcomp/types.hpp"

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::optional<std::string> lattice;
    std::optional<std::string> circuit;
    std::optional<int> order;
    std::optional<int> steps;
    std::optional<int> gamma;
    std::optional<qcomp::Real> t;
    std::optional<qcomp::Real> perturbation;
    std::vector<qcomp::Real> kappas;
    bool controlled = false;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "Config file");
    sub->add_option("--seed", o.seed, "Root seed");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--lattice", o.lattice, "Lattice spec");
}

qcomp::ExperimentConfig assemble(const std::string& subcommand, const Overrides& o) {
    qcomp::ExperimentConfig c = o.config.empty() ? qcomp::ExperimentConfig{} : qcomp::load_config(o.config);
    c.subcommand = subcommand;
    if (o.seed) c.seed = *o.seed;
    if (o.out) c.out = *o.out;
    if (o.threads) c.threads = *o.threads;
    if (o.lattice) c.lattice = *o.lattice;
    if (o.circuit) c.circuit = *o.circuit;
    if (o.order) c.target_order = *o.order;
    if (o.steps) c.target_steps = *o.steps;
    if (o.gamma) c.gamma = *o.gamma;
    if (o.t) c.t = *o.t;
    if (o.perturbation) c.detuning_error = *o.perturbation;
    if (!o.kappas.empty()) c.kappas = o.kappas;
    if (o.controlled) c.controlled = true;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational compression of translation-invariant time evolution"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qcomp::build_id());
    Overrides o;

    auto* tcrit = app.add_subcommand("tcrit-sweep", "Basin-of-attraction sweep over time steps");
    add_common(tcrit, o);

    auto* compress = app.add_subcommand("compress", "Optimize a block and compare against Trotter baselines");
    add_common(compress, o);
    compress->add_option("--gamma", o.gamma, "Identity control layers (enables the controlled cost)");
    compress->add_option("--t", o.t, "Total evolution time");

    auto* transfer = app.add_subcommand("transfer", "Transfer a circuit to a larger lattice and sweep kappa");
    add_common(transfer, o);
    transfer->add_option("--circuit", o.circuit, "Source circuit file");
    transfer->add_option("--kappa", o.kappas, "Truncation thresholds")->delimiter(',');

    auto* trotter = app.add_subcommand("trotter", "Emit a Trotter circuit");
    add_common(trotter, o);
    trotter->add_option("--order", o.order, "Product formula order (1, 2 or 4)");
    trotter->add_option("--steps", o.steps, "Trotter steps");
    trotter->add_option("--t", o.t, "Evolution time");
    trotter->add_flag("--controlled", o.controlled, "Globally controlled circuit");

    auto* bgate = app.add_subcommand("bgate-check", "Verify the echoed SDF B-gate identity");
    add_common(bgate, o);
    bgate->add_option("--perturbation", o.perturbation, "Relative detuning error");

    auto* lattice = app.add_subcommand("validate-lattice", "Check a lattice spec or file");
    add_common(lattice, o);

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        const qcomp::ExperimentConfig config = assemble(name, o);
        const qcomp::RunOutput output = qcomp::run_experiment(config);
        qcomp::write_output(output, config.out);
        std::cout << output.report;
        return output.exit_code;
    } catch (const qcomp::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
