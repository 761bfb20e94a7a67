// SPDX-License-Identifier: Apache-2.0
//
// rainbow-ttd: wideband true-time-delay array simulation and single-symbol
// beam-training toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rttd/experiments.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_invariant_error = 3;

int cmd_list()
{
    std::cout << "available experiments:\n";
    for (const auto& name : rttd::experiment_names())
        std::cout << "  " << name << "\n";
    return exit_ok;
}

int cmd_validate(const std::string& path)
{
    try {
        rttd::ScenarioConfig config = rttd::load_config(path);
        config.validate();
        // Round-trip sanity: the serialized form must parse back to the
        // identical configuration.
        if (rttd::parse_config(rttd::serialize_config(config)) != config)
            throw rttd::invariant_error("config round-trip mismatch");
        std::cout << "ok: " << path << "\n";
        return exit_ok;
    } catch (const rttd::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const rttd::invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return exit_invariant_error;
    }
}

int cmd_run(const std::string& experiment, const std::string& config_path,
            const std::vector<std::string>& overrides, std::uint64_t seed, bool seed_set,
            const std::string& out_dir)
{
    rttd::ScenarioConfig config;
    try {
        config = config_path.empty() ? rttd::default_config(experiment) : rttd::load_config(config_path);
        for (const auto& ov : overrides)
            rttd::apply_override(config, ov);
        if (seed_set)
            config.base_seed = seed;
        if (!out_dir.empty())
            config.output_dir = out_dir;
        config.validate();
    } catch (const rttd::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    }

    try {
        rttd::ExperimentResult res = rttd::run_experiment(experiment, config, config.output_dir);
        std::cout << res.summary() << "\n";
        for (const auto& f : res.files)
            std::cout << "wrote " << f << "\n";
        return exit_ok;
    } catch (const rttd::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return exit_invariant_error;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rainbow-ttd: wideband TTD array simulation and single-symbol beam training"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List available experiments");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate-config", "Validate a scenario config file");
    validate->add_option("path", validate_path, "Config file")->required();

    std::string run_name;
    std::string run_config;
    std::string run_out;
    std::vector<std::string> run_sets;
    std::uint64_t run_seed = 0;
    auto* run = app.add_subcommand("run", "Run an experiment");
    run->add_option("experiment", run_name, "Experiment name (see `list`)")->required();
    run->add_option("--config", run_config, "Scenario config file (defaults are built in)");
    run->add_option("--set", run_sets, "Override a config value, section.key=value (repeatable)");
    auto* seed_opt = run->add_option("--seed", run_seed, "Base seed for the Monte Carlo streams");
    run->add_option("--out", run_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed())
        return cmd_list();
    if (validate->parsed())
        return cmd_validate(validate_path);
    return cmd_run(run_name, run_config, run_sets, run_seed, seed_opt->count() > 0, run_out);
}
