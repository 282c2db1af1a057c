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

#include <cstddef>
#include <string>

namespace irsee
{

// Same scenario with the IRS removed: no reflected path, no IRS power, and
// an action space of [p, W] only.
Environment no_irs_policy_env(const SystemConfig &config, std::uint64_t channel_seed = 0);

// Uniform raw actions in [-1, 1] at every step; log rows mirror train().
// Channels come from the environment's own engine, actions from rng.
TrainingLog random_policy(Environment &env, int episodes, int steps, Rng &rng);

// w_k = h_k / |h_k| on the effective channels for the given phases. The
// powers do not enter a matched filter; they are accepted for interface symmetry.
cmat matched_filter_detector(const ChannelRealization &ch, const vec &phases, const vec &powers);

// Quantised decision space for the brute-force oracle. The detector is the
// matched filter of each enumerated phase vector.
struct QuantizedActionGrid
{
    int power_levels = 2;     // p_k in {0, P/(L-1), ..., P}; a single level means {P}
    int phase_levels = 2;     // theta_i in {0, 2pi/L, ..., 2pi(L-1)/L}
    double cap = 1e7;         // largest enumeration accepted

    // power_levels^N * phase_levels^M_R, as a double so overflow is visible.
    double enumeration_size(int num_devices, int irs_elements) const;
    double power_level(int j, double max_power) const;
    double phase_level(int j) const;
};

class OracleCapExceeded : public std::runtime_error
{
  public:
    OracleCapExceeded(double size, double cap);
    double size() const { return size_; }

  private:
    double size_;
};

struct OracleResult
{
    bool feasible = false;         // false when every grid point misses a deadline
    double best_ee = 0.0;          // bps/W
    PhysicalAction best_action;
    std::size_t evaluated = 0;
    std::size_t feasible_points = 0;
};

// Exact maximiser of sum-rate / total-power over the grid, keeping only points
// with tau_k <= T_k for every device. Ties resolve to the first point in
// enumeration order, so worker count does not change the result.
OracleResult grid_search_oracle(const SystemConfig &config, const ChannelRealization &ch,
                                const QuantizedActionGrid &grid, int workers = 1);

// One CSV row per oracle call: grid spec, best EE, and the best action.
void write_oracle_csv(const std::string &path, const QuantizedActionGrid &grid, const OracleResult &result,
                      const std::string &metadata);

} // namespace irsee
