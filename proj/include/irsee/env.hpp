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

#include "irsee/link.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace irsee
{

// Decision variables in physical units.
struct PhysicalAction
{
    vec power;        // W, one per device, in [0, P_k]
    vec phase;        // rad, one per IRS element, in [0, 2pi)
    cmat detection;   // M_B x N_I, unit-norm columns
};

struct StepResult
{
    double reward = 0.0;
    vec next_observation;
    LinkMetrics metrics;
    std::vector<bool> violations;   // tau_k > T_k
};

// Penalised reward: EE / reward_scale - sum_k violated_k * zeta_k.
double reward(const LinkMetrics &metrics, const std::vector<bool> &violations, const SystemConfig &config);

// sum_i gamma^i r_i over the given tail of rewards.
double discounted_return(std::span<const double> rewards, double discount);

// Markov decision process over one cell.
//
// Observation layout (length N + M_R + 2 M_B N + N):
//   [p_1..p_N | theta_1..theta_MR | W re/im | tau_1..tau_N]
// where W is flattened column by column, each entry as (re, im), and
// latencies are clipped at latency_clip * T_k.
//
// Raw actions share the first N + M_R + 2 M_B N slots of that layout but
// live in [-1, 1]; map_action turns them into a feasible PhysicalAction.
class Environment
{
  public:
    // channel_seed feeds the engine used by reset() without an argument, so
    // every strategy run with the same seed sees the same realizations.
    explicit Environment(SystemConfig config, std::uint64_t channel_seed = 0);

    const SystemConfig &config() const { return config_; }
    int num_devices() const { return config_.num_devices; }
    int bs_antennas() const { return config_.bs_antennas; }
    int irs_elements() const { return config_.active_irs_elements(); }
    int action_dim() const;
    int observation_dim() const;

    // Starts an episode: draws a channel (every episode, or on the first
    // reset only, depending on the refresh policy) and returns the
    // observation of the initial operating point.
    vec reset(Rng &rng);
    vec reset();

    StepResult step(const vec &raw_action);

    // Executes an already physical action (bypasses the raw mapping).
    StepResult execute(const PhysicalAction &action);

    PhysicalAction map_action(const vec &raw) const;
    vec encode_action(const PhysicalAction &action) const;

    vec encode_observation(const PhysicalAction &action, const vec &latency) const;
    PhysicalAction decode_observation(const vec &observation) const;
    vec decode_latency(const vec &observation) const;

    // Observation rescaled to roughly [-1, 1] per entry for function approximators.
    vec features(const vec &observation) const;
    void features_into(const vec &observation, Eigen::Ref<vec> out) const;

    LinkMetrics evaluate(const PhysicalAction &action) const;
    std::vector<bool> violations(const LinkMetrics &metrics) const;

    PhysicalAction initial_action() const;

    bool has_channel() const { return channel_.has_value(); }
    const ChannelRealization &channel() const;
    void set_channel(ChannelRealization channel);

    std::int64_t clipped_entries() const { return clipped_; }
    int steps_in_episode() const { return steps_; }

  private:
    IrsMode irs_mode() const { return config_.irs_enabled ? IrsMode::on : IrsMode::off; }

    SystemConfig config_;
    Rng channel_rng_;
    std::optional<ChannelRealization> channel_;
    bool episode_open_ = false;
    int steps_ = 0;
    mutable std::int64_t clipped_ = 0;
};

} // namespace irsee
