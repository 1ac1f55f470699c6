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
#include <iosfwd>
#include <string>
#include <vector>

#include "qcomp/types.hpp"

namespace qcomp {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Every knob of every subcommand. See docs/config.md for the file grammar.
struct ExperimentConfig {
    std::string subcommand = "compress";

    // geometry and model
    std::string lattice = "chain(4)";
    std::string target_lattice = "chain(8)";
    std::string hamiltonian = "heisenberg_field";  // or random_ti
    Real target_norm = 1.0;

    // times
    Real dt = 0.05;
    Real t = 0.1;
    std::vector<Real> dt_grid = {0.05, 0.1, 0.2, 0.5};

    // optimizer
    int max_iters = 5000;
    Real grad_tol = 1e-9;
    Real initial_step = 0.05;
    bool bb_steps = true;

    // cost
    std::string cost = "trace_norm_J";
    int samples = 1000;
    int gamma = 0;

    // sweep
    int searches = 10;
    int layers = 0;
    Real norm_cap = 1.0;
    bool fixed_hamiltonian = false;
    Real cluster_tol = 1e-5;

    // compress
    bool reoptimize = true;
    int infidelity_samples = 1000;
    std::vector<int> trotter_orders = {1, 2};
    std::vector<int> trotter_steps = {1, 2, 4};
    std::string trotter_partition = "classes";  // or sectors

    // transfer
    std::string circuit;
    std::vector<Real> kappas = {1e-3, 1e-4, 1e-5};
    int target_order = 4;
    int target_steps = 4;
    /// Build the globally controlled Trotter circuit in `trotter`.
    bool controlled = false;

    // bgate-check
    Real detuning_error = 0.0;

    // run
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out = "out";

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
/// Canonical text; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);
/// Range and consistency checks; throws ConfigError.
void validate_config(const ExperimentConfig& config);

/// Identifier of the source tree this binary was built from.
std::string build_id();

/// Result files of one run, relative names mapped to contents.
struct RunOutput {
    std::vector<std::pair<std::string, std::string>> files;
    /// Short human-readable report for stdout.
    std::string report;
    /// Non-zero when the run completed but found the input invalid.
    int exit_code = 0;
    const std::string& file(const std::string& name) const;
};

RunOutput run_tcrit(const ExperimentConfig& config);
RunOutput run_compress(const ExperimentConfig& config);
RunOutput run_transfer(const ExperimentConfig& config);
/// Trotter circuit of order `target_order` with `target_steps` steps at time t.
RunOutput run_trotter(const ExperimentConfig& config);
RunOutput run_bgate(const ExperimentConfig& config);
RunOutput run_validate_lattice(const ExperimentConfig& config);
/// Dispatches on config.subcommand.
RunOutput run_experiment(const ExperimentConfig& config);

/// Writes every file of `output` below `dir` (created when missing).
void write_output(const RunOutput& output, const std::string& dir);

}  // namespace qcomp
