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

#include "irsee/ddpg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irsee
{

enum class Strategy
{
    ddpg_irs,
    ddpg_no_irs,
    random
};

const char *to_string(Strategy s);
Strategy parse_strategy(const std::string &name);

struct SweepSpec
{
    std::string parameter;
    std::vector<double> values;
};

struct RunConfig
{
    ScenarioParams scenario;
    DdpgHyper hyper;
    std::vector<Strategy> strategies{Strategy::ddpg_irs};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::string output_dir = "runs";
    std::optional<SweepSpec> sweep;
    int workers = 1;
    double final_window = 0.1;
    bool save_checkpoints = false;

    void validate() const;

    // Stable key = value rendering of every setting; hashed into CSV metadata.
    std::string canonical() const;
};

// Parses the flat key = value format. Physical quantities carry unit
// suffixes (dBm, W, mW, Hz, kHz, MHz, s, ms, b, kb, Mb, m, dB); keys absent
// from the text keep their defaults. `source` prefixes error messages.
RunConfig parse_config(std::string_view text, const std::string &source = "<config>");
RunConfig load_config(const std::string &path);

// Applies one key/value pair with the same rules as the file parser.
void apply_setting(RunConfig &config, const std::string &key, const std::string &value);

// Sets a sweepable parameter (counts, discount, soft_update_rate, learning rates).
void apply_sweep_value(RunConfig &config, const std::string &parameter, double value);

std::uint64_t fnv1a64(std::string_view text);

} // namespace irsee
