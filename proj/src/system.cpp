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

#include "irsee/system.hpp"

#include <fmt/format.h>

namespace irsee
{

ArrayGrid planar_grid(int count, double spacing)
{
    if (count < 1)
        throw ConfigError(fmt::format("array element count must be >= 1, got {}", count));
    int cx = 1;
    for (int d = 1; d * d <= count; ++d)
        if (count % d == 0)
            cx = d;
    return ArrayGrid{cx, count / cx, spacing, spacing};
}

void ScenarioParams::validate() const
{
    auto require = [](bool ok, const char *key, const std::string &what) {
        if (!ok)
            throw ConfigError(fmt::format("{}: {}", key, what));
    };
    require(num_devices >= 1, "num_devices", "must be >= 1");
    require(bs_antennas >= 1, "bs_antennas", "must be >= 1");
    require(irs_elements >= 0, "irs_elements", "must be >= 0");
    require(cell_radius > 0.0, "cell_radius", "must be positive");
    require(wavelength > 0.0, "wavelength", "must be positive");
    require(element_spacing > 0.0, "element_spacing", "must be positive");
    require(path_loss.l0 > 0.0, "path_loss_reference", "must be positive");
    require(path_loss.eta_direct >= 1.0, "path_loss_exponent_direct", "must be >= 1");
    require(path_loss.eta_reflect >= 1.0, "path_loss_exponent_reflect", "must be >= 1");
    require(bandwidth > 0.0, "bandwidth", "must be positive");
    require(noise_power > 0.0, "noise_power", "must be positive");
    require(max_tx_power > 0.0, "max_tx_power", "must be positive");
    require(bs_circuit_power > 0.0, "bs_circuit_power", "must be positive");
    require(irs_element_power > 0.0, "irs_element_power", "must be positive");
    require(deadline > 0.0, "deadline", "must be positive");
    require(data_bits_min > 0.0, "data_size_min", "must be positive");
    require(data_bits_max >= data_bits_min, "data_size_max", "must be >= data_size_min");
    require(penalty >= 0.0, "penalty", "must be non-negative");
    require(reward_scale > 0.0, "reward_scale", "must be positive");
    require(latency_clip > 0.0, "latency_clip", "must be positive");
}

void SystemConfig::validate() const
{
    auto require = [](bool ok, const std::string &what) {
        if (!ok)
            throw ConfigError(what);
    };
    const auto n = static_cast<size_t>(num_devices);
    require(num_devices >= 1, "num_devices must be >= 1");
    require(bs_antennas >= 1, "bs_antennas must be >= 1");
    require(irs_elements >= 0, "irs_elements must be >= 0");
    require(geometry.bs_grid.size() == bs_antennas, "bs grid does not factor bs_antennas");
    require(!irs_enabled || irs_elements >= 1, "irs enabled with zero elements");
    require(irs_elements == 0 || geometry.irs_grid.size() == irs_elements, "irs grid does not factor irs_elements");
    require(geometry.cell_radius > 0.0, "cell_radius must be positive");
    require(geometry.wavelength > 0.0, "wavelength must be positive");
    for (const auto *g : {&geometry.bs_grid, &geometry.irs_grid})
        require(g->spacing_x > 0.0 && g->spacing_y > 0.0, "array spacings must be positive");
    require(geometry.iot_positions.size() == n, "iot_positions length must equal num_devices");
    for (size_t k = 0; k < n; ++k)
        require(distance(geometry.iot_positions[k], geometry.bs_position) <= geometry.cell_radius * (1.0 + 1e-12),
                fmt::format("device {} lies outside the cell", k));
    require(path_loss.l0 > 0.0, "l0 must be positive");
    require(path_loss.eta_direct >= 1.0 && path_loss.eta_reflect >= 1.0, "path-loss exponents must be >= 1");
    require(radio.bandwidth > 0.0 && radio.noise_power > 0.0, "bandwidth and noise power must be positive");
    require(radio.bs_circuit_power > 0.0 && radio.irs_element_power > 0.0, "circuit powers must be positive");
    require(radio.max_tx_power.size() == n && radio.data_bits.size() == n && radio.deadline.size() == n &&
                penalty.size() == n,
            "per-device vectors must have num_devices entries");
    for (size_t k = 0; k < n; ++k)
        require(radio.max_tx_power[k] > 0.0 && radio.data_bits[k] > 0.0 && radio.deadline[k] > 0.0,
                fmt::format("device {} has non-positive radio parameters", k));
    require(reward_scale > 0.0 && latency_clip > 0.0, "reward_scale and latency_clip must be positive");
}

SystemConfig make_system(const ScenarioParams &params, Rng &rng)
{
    params.validate();
    SystemConfig cfg;
    cfg.num_devices = params.num_devices;
    cfg.bs_antennas = params.bs_antennas;
    cfg.irs_elements = params.irs_elements;
    cfg.irs_enabled = params.irs_elements > 0;

    auto &g = cfg.geometry;
    g.bs_position = params.bs_position;
    g.irs_position = params.irs_position;
    g.cell_radius = params.cell_radius;
    g.wavelength = params.wavelength;
    g.bs_grid = planar_grid(params.bs_antennas, params.element_spacing);
    g.irs_grid = params.irs_elements > 0 ? planar_grid(params.irs_elements, params.element_spacing)
                                         : ArrayGrid{0, 0, params.element_spacing, params.element_spacing};

    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> bits(params.data_bits_min, params.data_bits_max);
    const auto n = static_cast<size_t>(params.num_devices);
    for (size_t k = 0; k < n; ++k)
    {
        double r = params.cell_radius * std::sqrt(u(rng));
        double phi = kTwoPi * u(rng);
        g.iot_positions.push_back({params.bs_position.x + r * std::cos(phi), params.bs_position.y + r * std::sin(phi)});
        cfg.radio.data_bits.push_back(bits(rng));
    }

    cfg.path_loss = params.path_loss;
    cfg.radio.bandwidth = params.bandwidth;
    cfg.radio.noise_power = params.noise_power;
    cfg.radio.max_tx_power.assign(n, params.max_tx_power);
    cfg.radio.bs_circuit_power = params.bs_circuit_power;
    cfg.radio.irs_element_power = params.irs_element_power;
    cfg.radio.deadline.assign(n, params.deadline);
    cfg.penalty.assign(n, params.penalty);

    cfg.mode = params.mode;
    cfg.refresh = params.refresh;
    cfg.reward_scale = params.reward_scale;
    cfg.latency_clip = params.latency_clip;
    cfg.validate();
    return cfg;
}

SystemConfig make_uniform_system(int num_devices, int bs_antennas, int irs_elements)
{
    ScenarioParams p;
    p.num_devices = num_devices;
    p.bs_antennas = bs_antennas;
    p.irs_elements = irs_elements;
    Rng rng(0);
    SystemConfig cfg = make_system(p, rng);
    for (int k = 0; k < num_devices; ++k)
    {
        cfg.geometry.iot_positions[static_cast<size_t>(k)] = {30.0 + 5.0 * k, 20.0};
        cfg.radio.data_bits[static_cast<size_t>(k)] = 300e3;
    }
    return cfg;
}

} // namespace irsee
