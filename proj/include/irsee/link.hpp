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

#include "irsee/channel.hpp"

#include <limits>

namespace irsee
{

enum class IrsMode
{
    on,
    off
};

struct LinkMetrics
{
    vec sinr;
    vec rate;      // bps
    vec latency;   // s, +inf where the rate is zero
    double total_power = 0.0;
    double energy_efficiency = 0.0;   // bps/W
};

// SINR of device k given the effective channels (columns of h) and the
// detection matrix (column k is w_k). Throws std::invalid_argument on zero w_k.
double sinr(int k, const cmat &detection, const cmat &channels, const vec &powers, double noise_power);

// Same, building the effective channels from a realization and IRS phases.
double sinr(int k, const cmat &detection, const vec &phases, const vec &powers, const ChannelRealization &ch,
            double noise_power);

// All SINRs at once.
vec sinr_all(const cmat &detection, const cmat &channels, const vec &powers, double noise_power);

inline double rate(double sinr_value, double bandwidth)
{
    return bandwidth * std::log2(1.0 + sinr_value);
}

inline double latency(double bits, double rate_bps)
{
    return rate_bps > 0.0 ? bits / rate_bps : std::numeric_limits<double>::infinity();
}

double total_power(const vec &powers, int irs_elements, IrsMode mode, const RadioParams &params);

// w_k = h_k / |h_k| for every column; a zero channel maps to the first unit vector.
cmat matched_filter(const cmat &channels);

// Sum rate over total power for one operating point.
double energy_efficiency(const cmat &detection, const vec &phases, const vec &powers, const ChannelRealization &ch,
                         const RadioParams &params, IrsMode mode);

// Full per-device metrics for one operating point.
LinkMetrics evaluate_link(const cmat &detection, const vec &phases, const vec &powers, const ChannelRealization &ch,
                          const RadioParams &params, IrsMode mode);

} // namespace irsee
