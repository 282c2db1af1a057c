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

#include "irsee/harness.hpp"
#include "irsee/baselines.hpp"
#include "irsee/csv.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <thread>

#ifndef IRSEE_VERSION
#define IRSEE_VERSION "unknown"
#endif

namespace irsee
{

namespace fs = std::filesystem;

const char *code_version()
{
    return IRSEE_VERSION;
}

std::vector<Job> plan_jobs(const RunConfig &config)
{
    std::vector<std::optional<double>> values;
    if (config.sweep)
        values.assign(config.sweep->values.begin(), config.sweep->values.end());
    else
        values.push_back(std::nullopt);

    std::vector<Job> jobs;
    for (const auto &v : values)
        for (auto seed : config.seeds)
            for (auto s : config.strategies)
                jobs.push_back({v, seed, s});
    return jobs;
}

RunConfig cell_config(const RunConfig &config, const Job &job)
{
    RunConfig c = config;
    if (config.sweep && job.sweep_value)
        apply_sweep_value(c, config.sweep->parameter, *job.sweep_value);
    c.sweep.reset();
    return c;
}

JobResult run_job(const RunConfig &config, const Job &job, const std::string &checkpoint_path)
{
    const RunConfig c = cell_config(config, job);
    Rng system_rng = derive_rng(job.seed, 0);
    const SystemConfig system = make_system(c.scenario, system_rng);

    JobResult result;
    result.job = job;
    try
    {
        if (job.strategy == Strategy::random)
        {
            Environment env(system, job.seed);
            Rng rng = derive_rng(job.seed, 2);
            result.log = random_policy(env, c.hyper.episodes, c.hyper.steps, rng);
        }
        else
        {
            Environment env = job.strategy == Strategy::ddpg_irs ? Environment(system, job.seed)
                                                                 : no_irs_policy_env(system, job.seed);
            Rng rng = derive_rng(job.seed, 1);
            DdpgAgent agent(env.observation_dim(), env.action_dim(), c.hyper, rng);
            result.log = train(env, agent, c.hyper, rng);
            if (!checkpoint_path.empty())
                save_checkpoint(checkpoint_path, agent, job.seed);
        }
    }
    catch (const std::exception &e)
    {
        result.log.aborted = true;
        result.log.failure = e.what();
    }
    if (!result.log.episodes.empty())
        result.final = final_window(result.log, c.final_window);
    return result;
}

namespace
{

std::string value_tag(double v)
{
    std::string s = fmt::format("{}", v);
    for (char &ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-'))
            ch = '_';
    return s;
}

std::string cell_metadata(const RunConfig &config, const Job &job)
{
    const RunConfig c = cell_config(config, job);
    std::string meta;
    meta += fmt::format("schema_version: {}\n", kCsvSchemaVersion);
    meta += fmt::format("code_version: {}\n", code_version());
    meta += fmt::format("config_hash: {:016x}\n", fnv1a64(c.canonical()));
    meta += fmt::format("seed: {}\n", job.seed);
    meta += fmt::format("strategy: {}\n", to_string(job.strategy));
    if (config.sweep && job.sweep_value)
        meta += fmt::format("sweep: {} = {}\n", config.sweep->parameter, format_double(*job.sweep_value));
    meta += fmt::format("reward_scale: {}\n", format_double(c.scenario.reward_scale));
    meta += fmt::format("episodes: {}\nsteps: {}", c.hyper.episodes, c.hyper.steps);
    return meta;
}

void write_curve(const fs::path &path, const RunConfig &config, const JobResult &r)
{
    std::string meta = cell_metadata(config, r.job);
    meta += fmt::format("\nstatus: {}", r.log.aborted ? "aborted: " + r.log.failure : "complete");
    CsvWriter csv(path.string(), meta);
    csv.header({"episode", "mean_reward", "energy_efficiency_bps_per_w", "violations"});
    for (const auto &e : r.log.episodes)
        csv.row({std::to_string(e.episode), format_double(e.mean_reward), format_double(e.mean_ee),
                 std::to_string(e.violations)});
}

std::pair<double, double> mean_std(const std::vector<double> &xs)
{
    if (xs.empty())
        return {std::nan(""), std::nan("")};
    double m = 0.0;
    for (double x : xs)
        m += x;
    m /= static_cast<double>(xs.size());
    double v = 0.0;
    for (double x : xs)
        v += (x - m) * (x - m);
    // Sample standard deviation; a single seed reports 0.
    const double sd = xs.size() > 1 ? std::sqrt(v / static_cast<double>(xs.size() - 1)) : 0.0;
    return {m, sd};
}

void write_summary(const fs::path &path, const RunConfig &config, const std::vector<SummaryRow> &rows)
{
    std::string meta;
    meta += fmt::format("schema_version: {}\n", kCsvSchemaVersion);
    meta += fmt::format("code_version: {}\n", code_version());
    meta += fmt::format("config_hash: {:016x}\n", fnv1a64(config.canonical()));
    std::string seeds;
    for (size_t i = 0; i < config.seeds.size(); ++i)
        seeds += (i ? "," : "") + std::to_string(config.seeds[i]);
    meta += fmt::format("seeds: {}\n", seeds);
    meta += fmt::format("final_window: {}", format_double(config.final_window));
    CsvWriter csv(path.string(), meta);
    csv.header({"sweep_parameter", "sweep_value", "strategy", "runs", "failures", "final_reward_mean",
                "final_reward_std", "final_energy_efficiency_mean", "final_energy_efficiency_std",
                "final_violations_mean", "final_violations_std"});
    for (const auto &r : rows)
        csv.row({config.sweep ? config.sweep->parameter : "", r.sweep_value ? format_double(*r.sweep_value) : "",
                 to_string(r.strategy), std::to_string(r.runs), std::to_string(r.failures),
                 format_double(r.reward_mean), format_double(r.reward_std), format_double(r.ee_mean),
                 format_double(r.ee_std), format_double(r.violations_mean), format_double(r.violations_std)});
}

} // namespace

std::string curve_file_name(const RunConfig &config, const Job &job)
{
    std::string name = "curve";
    if (config.sweep && job.sweep_value)
        name += fmt::format("_{}-{}", config.sweep->parameter, value_tag(*job.sweep_value));
    name += fmt::format("_{}_seed{}.csv", to_string(job.strategy), job.seed);
    return name;
}

std::vector<SummaryRow> summarize(const RunConfig &config, const std::vector<JobResult> &jobs)
{
    std::vector<SummaryRow> rows;
    auto same = [](const std::optional<double> &a, const std::optional<double> &b) {
        return a.has_value() == b.has_value() && (!a || *a == *b);
    };
    for (const auto &j : jobs)
    {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow &r) {
            return same(r.sweep_value, j.job.sweep_value) && r.strategy == j.job.strategy;
        });
        if (it == rows.end())
        {
            rows.push_back({});
            it = rows.end() - 1;
            it->sweep_value = j.job.sweep_value;
            it->strategy = j.job.strategy;
        }
    }
    for (auto &row : rows)
    {
        std::vector<double> rw, ee, vi;
        for (const auto &j : jobs)
        {
            if (!same(row.sweep_value, j.job.sweep_value) || row.strategy != j.job.strategy)
                continue;
            ++row.runs;
            if (j.log.aborted)
            {
                ++row.failures;
                continue;
            }
            // Recomputed from the curve values so the summary is reproducible from the files.
            const FinalWindow fw = final_window(j.log, config.final_window);
            rw.push_back(fw.reward);
            ee.push_back(fw.ee);
            vi.push_back(fw.violations);
        }
        std::tie(row.reward_mean, row.reward_std) = mean_std(rw);
        std::tie(row.ee_mean, row.ee_std) = mean_std(ee);
        std::tie(row.violations_mean, row.violations_std) = mean_std(vi);
    }
    return rows;
}

HarnessResult run(const RunConfig &config, bool write_files, const Progress &progress)
{
    config.validate();
    const auto jobs = plan_jobs(config);
    const fs::path out_dir(config.output_dir);
    if (write_files)
        fs::create_directories(out_dir);

    HarnessResult result;
    result.jobs.resize(jobs.size());
    std::atomic<size_t> next{0};
    std::mutex report_mutex;

    auto worker = [&] {
        for (size_t i = next++; i < jobs.size(); i = next++)
        {
            std::string checkpoint;
            if (write_files && config.save_checkpoints && jobs[i].strategy != Strategy::random)
            {
                checkpoint = curve_file_name(config, jobs[i]);
                checkpoint.replace(0, 5, "checkpoint");
                checkpoint.replace(checkpoint.size() - 4, 4, ".json");
                checkpoint = (out_dir / checkpoint).string();
            }
            JobResult r = run_job(config, jobs[i], checkpoint);
            if (write_files)
            {
                r.curve_file = curve_file_name(config, jobs[i]);
                try
                {
                    write_curve(out_dir / r.curve_file, config, r);
                }
                catch (const std::exception &e)
                {
                    r.log.aborted = true;
                    r.log.failure = e.what();
                }
            }
            {
                std::lock_guard lock(report_mutex);
                if (r.log.aborted)
                    spdlog::warn("cell {} aborted: {}", curve_file_name(config, jobs[i]), r.log.failure);
                if (progress)
                    progress(r);
            }
            result.jobs[i] = std::move(r);
        }
    };

    const int threads = std::max(1, std::min<int>(config.workers, static_cast<int>(jobs.size())));
    if (threads == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }

    for (const auto &j : result.jobs)
        result.failures += j.log.aborted ? 1 : 0;
    result.summary = summarize(config, result.jobs);
    if (write_files)
        write_summary(out_dir / "summary.csv", config, result.summary);
    return result;
}

std::vector<SweepPreset> sweep_presets()
{
    const std::vector<Strategy> both{Strategy::ddpg_irs, Strategy::ddpg_no_irs};
    const std::vector<Strategy> irs{Strategy::ddpg_irs};
    return {
        {"iot-devices", {"num_devices", {4, 6, 8}}, both},
        {"bs-antennas", {"bs_antennas", {3, 5, 7}}, both},
        {"irs-elements", {"irs_elements", {10, 20, 30}}, irs},
        {"discount", {"discount", {0.7, 0.8, 0.9}}, irs},
        {"update-rate", {"soft_update_rate", {0.01, 0.001, 0.0001}}, irs},
    };
}

const SweepPreset &find_preset(const std::string &name)
{
    static const auto presets = sweep_presets();
    for (const auto &p : presets)
        if (p.name == name)
            return p;
    std::string known;
    for (const auto &p : presets)
        known += (known.empty() ? "" : ", ") + p.name;
    throw ConfigError(fmt::format("unknown sweep preset '{}' (known: {})", name, known));
}

RunConfig preset_config(const RunConfig &base, const std::string &name)
{
    const SweepPreset &p = find_preset(name);
    RunConfig c = base;
    c.sweep = p.sweep;
    c.strategies = p.strategies;
    return c;
}

} // namespace irsee
