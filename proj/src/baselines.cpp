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

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <thread>

namespace irsee
{

Environment no_irs_policy_env(const SystemConfig &config, std::uint64_t channel_seed)
{
    SystemConfig c = config;
    c.irs_enabled = false;
    return Environment(std::move(c), channel_seed);
}

TrainingLog random_policy(Environment &env, int episodes, int steps, Rng &rng)
{
    TrainingLog log;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    vec action(env.action_dim());
    for (int e = 0; e < episodes; ++e)
    {
        env.reset();
        EpisodeRecord rec;
        rec.episode = e;
        for (int t = 0; t < steps; ++t)
        {
            for (Eigen::Index i = 0; i < action.size(); ++i)
                action(i) = u(rng);
            StepResult s = env.step(action);
            rec.mean_reward += s.reward;
            rec.mean_ee += s.metrics.energy_efficiency;
            rec.violations += std::count(s.violations.begin(), s.violations.end(), true);
        }
        rec.mean_reward /= steps;
        rec.mean_ee /= steps;
        log.episodes.push_back(rec);
    }
    return log;
}

cmat matched_filter_detector(const ChannelRealization &ch, const vec &phases, const vec &powers)
{
    if (powers.size() != ch.num_devices())
        throw std::invalid_argument("matched_filter_detector: one power per device expected");
    return matched_filter(effective_channels(ch, phases));
}

double QuantizedActionGrid::enumeration_size(int num_devices, int irs_elements) const
{
    return std::pow(static_cast<double>(power_levels), num_devices) *
           std::pow(static_cast<double>(phase_levels), irs_elements);
}

double QuantizedActionGrid::power_level(int j, double max_power) const
{
    return power_levels == 1 ? max_power : max_power * j / (power_levels - 1);
}

double QuantizedActionGrid::phase_level(int j) const
{
    return kTwoPi * j / phase_levels;
}

OracleCapExceeded::OracleCapExceeded(double size, double cap)
    : std::runtime_error(fmt::format("oracle grid has {:.3g} points, above the cap of {:.3g}", size, cap)), size_(size)
{
}

namespace
{

struct Candidate
{
    bool found = false;
    double ee = 0.0;
    std::size_t index = 0;   // phase_index * power_count + power_index
    std::size_t evaluated = 0;
    std::size_t feasible = 0;
};

bool better(const Candidate &a, const Candidate &b)
{
    if (!a.found)
        return false;
    if (!b.found)
        return true;
    return a.ee > b.ee || (a.ee == b.ee && a.index < b.index);
}

void decode_digits(std::size_t index, int base, Eigen::Index count, std::vector<int> &digits)
{
    digits.resize(static_cast<size_t>(count));
    for (Eigen::Index i = 0; i < count; ++i)
    {
        digits[static_cast<size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(base));
        index /= static_cast<std::size_t>(base);
    }
}

} // namespace

OracleResult grid_search_oracle(const SystemConfig &config, const ChannelRealization &ch,
                                const QuantizedActionGrid &grid, int workers)
{
    const int n = config.num_devices;
    const int mr = ch.irs_elements();
    if (grid.power_levels < 1 || grid.phase_levels < 1)
        throw std::invalid_argument("oracle grid needs at least one level per axis");
    const double size = grid.enumeration_size(n, mr);
    if (size > grid.cap)
        throw OracleCapExceeded(size, grid.cap);

    const auto power_count = static_cast<std::size_t>(std::llround(std::pow(grid.power_levels, n)));
    const auto phase_count = static_cast<std::size_t>(std::llround(std::pow(grid.phase_levels, mr)));
    const IrsMode mode = config.irs_enabled ? IrsMode::on : IrsMode::off;
    const auto &radio = config.radio;

    auto scan = [&](std::size_t phase_begin, std::size_t phase_end) {
        Candidate best;
        std::vector<int> digits;
        vec phases(mr);
        vec powers(n);
        for (std::size_t pi = phase_begin; pi < phase_end; ++pi)
        {
            decode_digits(pi, grid.phase_levels, mr, digits);
            for (int i = 0; i < mr; ++i)
                phases(i) = grid.phase_level(digits[static_cast<size_t>(i)]);
            const cmat h = effective_channels(ch, phases);
            const cmat w = matched_filter(h);
            const mat gain = (w.adjoint() * h).cwiseAbs2();   // |w_k^H h_i|^2, unit-norm w
            for (std::size_t qi = 0; qi < power_count; ++qi)
            {
                decode_digits(qi, grid.power_levels, n, digits);
                for (int k = 0; k < n; ++k)
                    powers(k) = grid.power_level(digits[static_cast<size_t>(k)], radio.max_tx_power[static_cast<size_t>(k)]);
                ++best.evaluated;
                double sum_rate = 0.0;
                bool ok = true;
                for (int k = 0; k < n && ok; ++k)
                {
                    double signal = powers(k) * gain(k, k);
                    double interference = gain.row(k).dot(powers) - signal;
                    double r = rate(signal / (interference + radio.noise_power), radio.bandwidth);
                    ok = latency(radio.data_bits[static_cast<size_t>(k)], r) <= radio.deadline[static_cast<size_t>(k)];
                    sum_rate += r;
                }
                if (!ok)
                    continue;
                ++best.feasible;
                Candidate c{true, sum_rate / total_power(powers, mr, mode, radio), pi * power_count + qi, 0, 0};
                if (better(c, best))
                {
                    best.found = true;
                    best.ee = c.ee;
                    best.index = c.index;
                }
            }
        }
        return best;
    };

    const auto nworkers = static_cast<std::size_t>(std::clamp<long>(workers, 1, static_cast<long>(phase_count)));
    std::vector<Candidate> partial(nworkers);
    if (nworkers == 1)
        partial[0] = scan(0, phase_count);
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < nworkers; ++w)
            pool.emplace_back([&, w] { partial[w] = scan(phase_count * w / nworkers, phase_count * (w + 1) / nworkers); });
        for (auto &t : pool)
            t.join();
    }

    Candidate best;
    std::size_t evaluated = 0;
    std::size_t feasible = 0;
    for (const auto &c : partial)
    {
        evaluated += c.evaluated;
        feasible += c.feasible;
        if (better(c, best))
            best = c;
    }

    OracleResult out;
    out.evaluated = evaluated;
    out.feasible_points = feasible;
    out.feasible = best.found;
    if (!best.found)
        return out;

    std::vector<int> digits;
    out.best_action.phase.resize(mr);
    decode_digits(best.index / power_count, grid.phase_levels, mr, digits);
    for (int i = 0; i < mr; ++i)
        out.best_action.phase(i) = grid.phase_level(digits[static_cast<size_t>(i)]);
    out.best_action.power.resize(n);
    decode_digits(best.index % power_count, grid.power_levels, n, digits);
    for (int k = 0; k < n; ++k)
        out.best_action.power(k) = grid.power_level(digits[static_cast<size_t>(k)], radio.max_tx_power[static_cast<size_t>(k)]);
    out.best_action.detection = matched_filter(effective_channels(ch, out.best_action.phase));
    // Report the EE of the reconstructed action through the shared link path.
    out.best_ee = evaluate_link(out.best_action.detection, out.best_action.phase, out.best_action.power, ch, radio, mode)
                      .energy_efficiency;
    return out;
}

void write_oracle_csv(const std::string &path, const QuantizedActionGrid &grid, const OracleResult &result,
                      const std::string &metadata)
{
    CsvWriter csv(path, metadata);
    csv.header({"power_levels", "phase_levels", "feasible", "best_ee_bps_per_w", "evaluated", "feasible_points",
                "best_power_w", "best_phase_rad"});
    auto join = [](const vec &v) {
        std::string s;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            s += (i ? ";" : "") + format_double(v(i));
        return s;
    };
    csv.row({std::to_string(grid.power_levels), std::to_string(grid.phase_levels), result.feasible ? "1" : "0",
             format_double(result.best_ee), std::to_string(result.evaluated), std::to_string(result.feasible_points),
             join(result.best_action.power), join(result.best_action.phase)});
}

} // namespace irsee
