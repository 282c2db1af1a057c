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

#pragma once

#include "irsee/config.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace irsee
{

const char *code_version();

// One cell of the experiment grid.
struct Job
{
    std::optional<double> sweep_value;
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::ddpg_irs;
};

struct JobResult
{
    Job job;
    TrainingLog log;
    FinalWindow final;
    std::string curve_file;   // relative to the output directory; empty when not written
};

struct SummaryRow
{
    std::optional<double> sweep_value;
    Strategy strategy = Strategy::ddpg_irs;
    int runs = 0;
    int failures = 0;
    double reward_mean = 0.0, reward_std = 0.0;
    double ee_mean = 0.0, ee_std = 0.0;
    double violations_mean = 0.0, violations_std = 0.0;
};

struct HarnessResult
{
    std::vector<JobResult> jobs;
    std::vector<SummaryRow> summary;
    int failures = 0;
    bool ok() const { return failures == 0; }
};

// Sweep value (outer) x seed x strategy (inner).
std::vector<Job> plan_jobs(const RunConfig &config);

// Configuration seen by a single cell, with the sweep value applied.
RunConfig cell_config(const RunConfig &config, const Job &job);

// Builds the seeded system and runs one strategy in memory. Seeds derive
// the device layout, the channel stream and the agent stream independently,
// so every strategy of the same seed sees the same realizations. A non-empty
// checkpoint_path receives the trained agent.
JobResult run_job(const RunConfig &config, const Job &job, const std::string &checkpoint_path = {});

using Progress = std::function<void(const JobResult &)>;

// Runs every cell on config.workers threads. With write_files the curve CSVs,
// summary.csv and optional checkpoints go under config.output_dir only.
HarnessResult run(const RunConfig &config, bool write_files = true, const Progress &progress = {});

// Mean/std across seeds, grouped by (sweep value, strategy) in plan order.
std::vector<SummaryRow> summarize(const RunConfig &config, const std::vector<JobResult> &jobs);

std::string curve_file_name(const RunConfig &config, const Job &job);

struct SweepPreset
{
    std::string name;
    SweepSpec sweep;
    std::vector<Strategy> strategies;
};

std::vector<SweepPreset> sweep_presets();
const SweepPreset &find_preset(const std::string &name);

// base with the preset's sweep and strategies applied.
RunConfig preset_config(const RunConfig &base, const std::string &name);

} // namespace irsee
