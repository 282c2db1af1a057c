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

#include "irsee/env.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace irsee
{

namespace
{

// Largest representable phase strictly below 2pi.
const double kPhaseCeil = std::nextafter(kTwoPi, 0.0);

} // namespace

double reward(const LinkMetrics &metrics, const std::vector<bool> &violations, const SystemConfig &config)
{
    double r = metrics.energy_efficiency / config.reward_scale;
    for (size_t k = 0; k < violations.size(); ++k)
        if (violations[k])
            r -= config.penalty[k];
    return r;
}

double discounted_return(std::span<const double> rewards, double discount)
{
    if (discount < 0.0 || discount > 1.0)
        throw std::invalid_argument(fmt::format("discount {} outside [0, 1]", discount));
    double g = 0.0;
    for (auto it = rewards.rbegin(); it != rewards.rend(); ++it)
        g = *it + discount * g;
    return g;
}

Environment::Environment(SystemConfig config, std::uint64_t channel_seed)
    : config_(std::move(config)), channel_rng_(derive_rng(channel_seed, 0x636861))
{
    config_.validate();
}

int Environment::action_dim() const
{
    return num_devices() + irs_elements() + 2 * bs_antennas() * num_devices();
}

int Environment::observation_dim() const
{
    return action_dim() + num_devices();
}

const ChannelRealization &Environment::channel() const
{
    if (!channel_)
        throw UsageError("environment has no channel; call reset() first");
    return *channel_;
}

void Environment::set_channel(ChannelRealization channel)
{
    if (channel.num_devices() != num_devices() || channel.bs_antennas() != bs_antennas() ||
        channel.irs_elements() != irs_elements())
        throw std::invalid_argument("set_channel: realization dimensions do not match the environment");
    channel_ = std::move(channel);
    episode_open_ = true;
    steps_ = 0;
}

PhysicalAction Environment::initial_action() const
{
    PhysicalAction a;
    a.power = Eigen::Map<const vec>(config_.radio.max_tx_power.data(), num_devices()) * 0.5;
    a.phase = vec::Zero(irs_elements());
    a.detection = matched_filter(effective_channels(channel(), a.phase));
    return a;
}

vec Environment::reset(Rng &rng)
{
    if (!channel_ || config_.refresh == ChannelRefresh::episode)
        channel_ = sample_channels(config_, rng);
    episode_open_ = true;
    steps_ = 0;
    PhysicalAction a = initial_action();
    return encode_observation(a, evaluate(a).latency);
}

vec Environment::reset()
{
    return reset(channel_rng_);
}

PhysicalAction Environment::map_action(const vec &raw) const
{
    const int n = num_devices();
    const int mr = irs_elements();
    const int mb = bs_antennas();
    if (raw.size() != action_dim())
        throw std::invalid_argument(fmt::format("map_action: expected {} entries, got {}", action_dim(), raw.size()));

    vec x(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i)
    {
        if (!std::isfinite(raw(i)))
            throw std::invalid_argument(fmt::format("map_action: entry {} is not finite", i));
        x(i) = std::clamp(raw(i), -1.0, 1.0);
        if (x(i) != raw(i))
            ++clipped_;
    }

    PhysicalAction a;
    a.power.resize(n);
    for (int k = 0; k < n; ++k)
        a.power(k) = config_.radio.max_tx_power[static_cast<size_t>(k)] * (x(k) + 1.0) / 2.0;
    a.phase.resize(mr);
    for (int i = 0; i < mr; ++i)
        a.phase(i) = std::min(kPi * (x(n + i) + 1.0), kPhaseCeil);

    a.detection.resize(mb, n);
    const int off = n + mr;
    for (int k = 0; k < n; ++k)
    {
        for (int m = 0; m < mb; ++m)
        {
            const int idx = off + 2 * (k * mb + m);
            a.detection(m, k) = cplx(x(idx), x(idx + 1));
        }
        const double norm = a.detection.col(k).norm();
        if (norm > 0.0)
            a.detection.col(k) /= norm;
        else
            a.detection(0, k) = 1.0;
    }
    return a;
}

vec Environment::encode_action(const PhysicalAction &action) const
{
    const int n = num_devices();
    const int mr = irs_elements();
    const int mb = bs_antennas();
    vec raw(action_dim());
    for (int k = 0; k < n; ++k)
        raw(k) = 2.0 * action.power(k) / config_.radio.max_tx_power[static_cast<size_t>(k)] - 1.0;
    for (int i = 0; i < mr; ++i)
        raw(n + i) = action.phase(i) / kPi - 1.0;
    const int off = n + mr;
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < mb; ++m)
        {
            raw(off + 2 * (k * mb + m)) = action.detection(m, k).real();
            raw(off + 2 * (k * mb + m) + 1) = action.detection(m, k).imag();
        }
    return raw;
}

vec Environment::encode_observation(const PhysicalAction &action, const vec &latency) const
{
    const int n = num_devices();
    const int mr = irs_elements();
    const int mb = bs_antennas();
    vec obs(observation_dim());
    obs.head(n) = action.power;
    obs.segment(n, mr) = action.phase;
    const int off = n + mr;
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < mb; ++m)
        {
            obs(off + 2 * (k * mb + m)) = action.detection(m, k).real();
            obs(off + 2 * (k * mb + m) + 1) = action.detection(m, k).imag();
        }
    const int lat = off + 2 * mb * n;
    for (int k = 0; k < n; ++k)
        obs(lat + k) = std::min(latency(k), config_.latency_clip * config_.radio.deadline[static_cast<size_t>(k)]);
    return obs;
}

PhysicalAction Environment::decode_observation(const vec &observation) const
{
    if (observation.size() != observation_dim())
        throw std::invalid_argument("decode_observation: wrong observation length");
    const int n = num_devices();
    const int mr = irs_elements();
    const int mb = bs_antennas();
    PhysicalAction a;
    a.power = observation.head(n);
    a.phase = observation.segment(n, mr);
    a.detection.resize(mb, n);
    const int off = n + mr;
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < mb; ++m)
            a.detection(m, k) = cplx(observation(off + 2 * (k * mb + m)), observation(off + 2 * (k * mb + m) + 1));
    return a;
}

vec Environment::decode_latency(const vec &observation) const
{
    return observation.tail(num_devices());
}

void Environment::features_into(const vec &observation, Eigen::Ref<vec> out) const
{
    const int n = num_devices();
    const int mr = irs_elements();
    const int w_len = 2 * bs_antennas() * n;
    for (int k = 0; k < n; ++k)
        out(k) = 2.0 * observation(k) / config_.radio.max_tx_power[static_cast<size_t>(k)] - 1.0;
    for (int i = 0; i < mr; ++i)
        out(n + i) = observation(n + i) / kPi - 1.0;
    out.segment(n + mr, w_len) = observation.segment(n + mr, w_len);
    // Latency enters on a log scale, relative to its deadline: 1e-4 T -> -1, 10 T -> +1.
    const int lat = n + mr + w_len;
    for (int k = 0; k < n; ++k)
    {
        const double rel = std::clamp(observation(lat + k) / config_.radio.deadline[static_cast<size_t>(k)], 1e-4, 10.0);
        out(lat + k) = (std::log10(rel) + 1.5) / 2.5;
    }
}

vec Environment::features(const vec &observation) const
{
    if (observation.size() != observation_dim())
        throw std::invalid_argument("features: wrong observation length");
    vec out(observation.size());
    features_into(observation, out);
    return out;
}

LinkMetrics Environment::evaluate(const PhysicalAction &action) const
{
    return evaluate_link(action.detection, action.phase, action.power, channel(), config_.radio, irs_mode());
}

std::vector<bool> Environment::violations(const LinkMetrics &metrics) const
{
    std::vector<bool> v(static_cast<size_t>(num_devices()));
    for (int k = 0; k < num_devices(); ++k)
        v[static_cast<size_t>(k)] = metrics.latency(k) > config_.radio.deadline[static_cast<size_t>(k)];
    return v;
}

StepResult Environment::execute(const PhysicalAction &action)
{
    if (!episode_open_)
        throw UsageError("step() called before reset()");
    StepResult out;
    out.metrics = evaluate(action);
    out.violations = violations(out.metrics);
    out.reward = reward(out.metrics, out.violations, config_);
    out.next_observation = encode_observation(action, out.metrics.latency);
    ++steps_;
    return out;
}

StepResult Environment::step(const vec &raw_action)
{
    if (!episode_open_)
        throw UsageError("step() called before reset()");
    return execute(map_action(raw_action));
}

} // namespace irsee
