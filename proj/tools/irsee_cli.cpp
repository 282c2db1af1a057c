// SPDX-License-Identifier: Apache-2.0
//
// irsee - energy-efficient IRS-assisted uplink simulation and DDPG control
// Copyright (C) 2026 The irsee Authors
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

#include "irsee/baselines.hpp"
#include "irsee/csv.hpp"
#include "irsee/harness.hpp"
#include "irsee/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <iostream>

using namespace irsee;

namespace
{

struct Common
{
    std::string config_path;
    std::string out_dir;
    std::string seeds;
    std::string mode;
    int workers = 0;
    std::vector<std::string> overrides;
};

void add_common(CLI::App *cmd, Common &c)
{
    cmd->add_option("--config", c.config_path, "Configuration file (key = value)");
    cmd->add_option("--out", c.out_dir, "Output directory");
    cmd->add_option("--seeds", c.seeds, "Comma-separated seed list");
    cmd->add_option("--workers", c.workers, "Parallel cells")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", c.mode, "Channel model")->check(CLI::IsMember({"rayleigh", "geometric"}));
    cmd->add_option("--set", c.overrides, "Override a configuration key (key=value), repeatable");
}

RunConfig resolve(const Common &c)
{
    RunConfig cfg = c.config_path.empty() ? parse_config("", "<defaults>") : load_config(c.config_path);
    for (const auto &kv : c.overrides)
    {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError(fmt::format("--set '{}': expected key=value", kv));
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        apply_setting(cfg, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
    }
    if (!c.out_dir.empty())
        cfg.output_dir = c.out_dir;
    if (!c.seeds.empty())
        apply_setting(cfg, "seeds", c.seeds);
    if (!c.mode.empty())
        apply_setting(cfg, "channel_mode", c.mode);
    if (c.workers > 0)
        cfg.workers = c.workers;
    cfg.validate();
    return cfg;
}

int run_harness(const RunConfig &cfg)
{
    const size_t total = plan_jobs(cfg).size();
    size_t done = 0;
    const HarnessResult res = run(cfg, true, [&](const JobResult &r) {
        ++done;
        std::cout << fmt::format("[{}/{}] {} final EE {:.6g} bps/W, reward {:.6g}{}\n", done, total,
                                 curve_file_name(cfg, r.job), r.final.ee, r.final.reward,
                                 r.log.aborted ? " (aborted: " + r.log.failure + ")" : "");
    });
    std::cout << fmt::format("{} cells, {} failed; results in {}\n", res.jobs.size(), res.failures, cfg.output_dir);
    return res.ok() ? 0 : 1;
}

int run_oracle(const RunConfig &cfg, int power_levels, int phase_levels)
{
    QuantizedActionGrid grid;
    grid.power_levels = power_levels;
    grid.phase_levels = phase_levels;
    std::filesystem::create_directories(cfg.output_dir);
    int failures = 0;
    for (auto seed : cfg.seeds)
    {
        Rng sys = derive_rng(seed, 0);
        const SystemConfig system = make_system(cfg.scenario, sys);
        Environment env(system, seed);
        env.reset();
        try
        {
            const OracleResult res = grid_search_oracle(system, env.channel(), grid, cfg.workers);
            const std::string meta = fmt::format("schema_version: {}\ncode_version: {}\nconfig_hash: {:016x}\nseed: {}",
                                                 kCsvSchemaVersion, code_version(), fnv1a64(cfg.canonical()), seed);
            const auto path = std::filesystem::path(cfg.output_dir) / fmt::format("oracle_seed{}.csv", seed);
            write_oracle_csv(path.string(), grid, res, meta);
            std::cout << fmt::format("seed {}: {} best EE {:.17g} bps/W over {} points ({} feasible)\n", seed,
                                     res.feasible ? "feasible," : "infeasible,", res.best_ee, res.evaluated,
                                     res.feasible_points);
        }
        catch (const OracleCapExceeded &e)
        {
            std::cerr << fmt::format("seed {}: {}\n", seed, e.what());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"irsee: IRS-assisted uplink simulation with DDPG control"};
    app.require_subcommand(1);

    Common run_opts, sweep_opts, oracle_opts;
    auto *run_cmd = app.add_subcommand("run", "Train and evaluate every configured strategy and seed");
    add_common(run_cmd, run_opts);

    std::string preset;
    auto *sweep_cmd = app.add_subcommand("sweep", "Run a named sweep preset");
    std::string preset_help = "Preset name:";
    for (const auto &p : sweep_presets())
        preset_help += " " + p.name;
    sweep_cmd->add_option("preset", preset, preset_help)->required();
    add_common(sweep_cmd, sweep_opts);

    VerifyOptions verify_opts;
    auto *verify_cmd = app.add_subcommand("verify", "Run the numerical invariant suites");
    verify_cmd->add_option("--seed", verify_opts.seed, "Seed for randomized instances");
    verify_cmd->add_option("--instances", verify_opts.instances, "Random instances per suite")
        ->check(CLI::PositiveNumber);

    int power_levels = 8, phase_levels = 16;
    auto *oracle_cmd = app.add_subcommand("oracle", "Brute-force the quantized action grid per seed");
    add_common(oracle_cmd, oracle_opts);
    oracle_cmd->add_option("--power-levels", power_levels, "Power levels per device")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--phase-levels", phase_levels, "Phase levels per element")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run_cmd)
            return run_harness(resolve(run_opts));
        if (*sweep_cmd)
        {
            RunConfig cfg = preset_config(resolve(sweep_opts), preset);
            if (sweep_opts.out_dir.empty() && !sweep_opts.config_path.empty())
                cfg.output_dir = (std::filesystem::path(cfg.output_dir) / preset).string();
            else if (sweep_opts.out_dir.empty())
                cfg.output_dir = (std::filesystem::path("runs") / preset).string();
            cfg.validate();
            return run_harness(cfg);
        }
        if (*verify_cmd)
        {
            const VerifyReport report = verify(verify_opts);
            print_report(std::cout, report);
            return report.all_passed() ? 0 : 1;
        }
        if (*oracle_cmd)
            return run_oracle(resolve(oracle_opts), power_levels, phase_levels);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
