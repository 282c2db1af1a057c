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

#include "irsee/common.hpp"

#include <vector>

namespace irsee
{

// Uniform planar array: count_x * count_y elements on a rectangular lattice.
struct ArrayGrid
{
    int count_x = 1;
    int count_y = 1;
    double spacing_x = 0.05;
    double spacing_y = 0.05;

    int size() const { return count_x * count_y; }
};

// Most-square factorisation of an element count into a planar grid.
ArrayGrid planar_grid(int count, double spacing);

struct Geometry
{
    Point bs_position{0.0, 0.0};
    Point irs_position{100.0, 0.0};
    std::vector<Point> iot_positions;
    double cell_radius = 100.0;
    double wavelength = 0.1;
    ArrayGrid bs_grid;
    ArrayGrid irs_grid;
};

struct PathLossParams
{
    double l0 = 1e-3;          // reference gain at 1 m (-30 dB)
    double eta_direct = 3.5;
    double eta_reflect = 2.2;
};

// Per-device vectors have one entry per IoT device.
struct RadioParams
{
    double bandwidth = 1e6;
    double noise_power = 3.981071705534973e-15;
    std::vector<double> max_tx_power;
    double bs_circuit_power = 1.0;
    double irs_element_power = 4.466835921509635e-3;
    std::vector<double> data_bits;
    std::vector<double> deadline;
};

enum class ChannelMode
{
    rayleigh,
    geometric
};

// When a new channel realization is drawn.
enum class ChannelRefresh
{
    episode,
    run
};

// Scenario-level description as read from a configuration file. Per-device
// quantities are given as scalars or ranges and instantiated per seed.
struct ScenarioParams
{
    int num_devices = 6;
    int bs_antennas = 5;
    int irs_elements = 20;

    double cell_radius = 100.0;
    Point bs_position{0.0, 0.0};
    Point irs_position{100.0, 0.0};
    double wavelength = 0.1;
    double element_spacing = 0.05;

    PathLossParams path_loss;

    double bandwidth = 1e6;
    double noise_power = dbm_to_watts(-114.0);
    double max_tx_power = dbm_to_watts(5.0);
    double bs_circuit_power = dbm_to_watts(30.0);
    double irs_element_power = dbm_to_watts(6.5);
    double deadline = 8.0;
    double data_bits_min = 250e3;
    double data_bits_max = 350e3;
    double penalty = 1.0;

    ChannelMode mode = ChannelMode::rayleigh;
    ChannelRefresh refresh = ChannelRefresh::run;
    double reward_scale = 1e6;
    double latency_clip = 10.0;

    void validate() const;
};

// Fully instantiated scenario for one seed.
struct SystemConfig
{
    int num_devices = 1;
    int bs_antennas = 1;
    int irs_elements = 0;
    bool irs_enabled = true;

    Geometry geometry;
    PathLossParams path_loss;
    RadioParams radio;
    std::vector<double> penalty;

    ChannelMode mode = ChannelMode::rayleigh;
    ChannelRefresh refresh = ChannelRefresh::run;
    double reward_scale = 1e6;
    double latency_clip = 10.0;

    // Elements that actually take part in the link (0 when the IRS is off).
    int active_irs_elements() const { return irs_enabled ? irs_elements : 0; }

    void validate() const;
};

// Places devices uniformly over the BS disk and draws data sizes.
SystemConfig make_system(const ScenarioParams &params, Rng &rng);

// Builds a system with explicit per-device values (used by tests and tools).
SystemConfig make_uniform_system(int num_devices, int bs_antennas, int irs_elements);

} // namespace irsee
