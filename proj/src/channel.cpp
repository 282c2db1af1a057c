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

#include "irsee/channel.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace irsee
{

namespace
{

// Arrays lie in the horizontal plane and every node sits in that plane, so
// all arrival/departure directions are at 90 degrees from the array normal.
constexpr double kInPlaneVertical = kPi / 2.0;

double clamped_distance(double d)
{
    if (d < 1.0)
    {
        spdlog::warn("link distance {:.4g} m below 1 m reference, clamped", d);
        return 1.0;
    }
    return d;
}

double bearing(Point from, Point to)
{
    return std::atan2(to.y - from.y, to.x - from.x);
}

} // namespace

cvec steering_vector(const ArrayGrid &grid, double wavelength, double vertical_angle, double horizontal_angle)
{
    if (!(wavelength > 0.0))
        throw ConfigError(fmt::format("steering vector: wavelength must be positive, got {}", wavelength));
    if (grid.count_x < 1 || grid.count_y < 1)
        throw ConfigError(fmt::format("steering vector: grid {}x{} has no elements", grid.count_x, grid.count_y));

    const double k = kTwoPi / wavelength;
    const double ux = grid.spacing_x * std::sin(vertical_angle) * std::cos(horizontal_angle);
    const double uy = grid.spacing_y * std::sin(vertical_angle) * std::sin(horizontal_angle);

    cvec a(grid.size());
    for (int m = 0; m < grid.count_x; ++m)
        for (int n = 0; n < grid.count_y; ++n)
            a(m * grid.count_y + n) = std::polar(1.0, -k * (m * ux + n * uy));
    return a;
}

cmat los_irs_bs_matrix(const Geometry &geometry)
{
    // The departure angle at the IRS equals the arrival angle at the BS.
    const double beta = bearing(geometry.bs_position, geometry.irs_position);
    return los_irs_bs_matrix(geometry.bs_grid, geometry.irs_grid, geometry.wavelength, kInPlaneVertical, beta);
}

cmat los_irs_bs_matrix(const ArrayGrid &bs_grid, const ArrayGrid &irs_grid, double wavelength, double vertical_angle,
                       double horizontal_angle)
{
    cvec a_bs = steering_vector(bs_grid, wavelength, vertical_angle, horizontal_angle);
    cvec a_irs = steering_vector(irs_grid, wavelength, vertical_angle, horizontal_angle);
    return a_bs * a_irs.adjoint();
}

double path_loss_direct(Point device, Point bs, const PathLossParams &params)
{
    return params.l0 / std::pow(clamped_distance(distance(device, bs)), params.eta_direct);
}

double path_loss_reflect(Point device, Point irs, Point bs, const PathLossParams &params)
{
    const double d = distance(device, irs) + distance(irs, bs);
    return params.l0 / std::pow(clamped_distance(d), params.eta_reflect);
}

ChannelRealization sample_channels(const SystemConfig &config, Rng &rng)
{
    return sample_channels(config, rng, config.mode);
}

ChannelRealization sample_channels(const SystemConfig &config, Rng &rng, ChannelMode mode)
{
    const int n = config.num_devices;
    const int mb = config.bs_antennas;
    const int mr = config.active_irs_elements();
    const auto &geo = config.geometry;

    ChannelRealization ch;
    ch.h_d.resize(mb, n);
    ch.h_r.resize(mr, n);
    ch.g.resize(mb, mr);
    ch.rho_d.resize(n);
    ch.rho_r.resize(n);

    for (int k = 0; k < n; ++k)
    {
        const Point pos = geo.iot_positions[static_cast<size_t>(k)];
        ch.rho_d(k) = path_loss_direct(pos, geo.bs_position, config.path_loss);
        ch.rho_r(k) = mr > 0 ? path_loss_reflect(pos, geo.irs_position, geo.bs_position, config.path_loss) : 0.0;
    }

    switch (mode)
    {
    case ChannelMode::rayleigh:
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < mb; ++i)
                ch.h_d(i, k) = sample_cn(rng);
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < mr; ++j)
                ch.h_r(j, k) = sample_cn(rng);
        for (int j = 0; j < mr; ++j)
            for (int i = 0; i < mb; ++i)
                ch.g(i, j) = sample_cn(rng);
        break;
    case ChannelMode::geometric:
        for (int k = 0; k < n; ++k)
        {
            const Point pos = geo.iot_positions[static_cast<size_t>(k)];
            ch.h_d.col(k) = steering_vector(geo.bs_grid, geo.wavelength, kInPlaneVertical, bearing(geo.bs_position, pos));
            if (mr > 0)
                ch.h_r.col(k) =
                    steering_vector(geo.irs_grid, geo.wavelength, kInPlaneVertical, bearing(geo.irs_position, pos));
        }
        if (mr > 0)
            ch.g = los_irs_bs_matrix(geo);
        break;
    default:
        throw ConfigError("unknown channel mode");
    }
    return ch;
}

cmat effective_channels(const ChannelRealization &ch, const vec &phases)
{
    if (phases.size() != ch.irs_elements())
        throw std::invalid_argument(
            fmt::format("effective channel: {} phases for {} IRS elements", phases.size(), ch.irs_elements()));

    cmat h = ch.h_d * ch.rho_d.cwiseSqrt().asDiagonal();
    if (ch.irs_elements() > 0)
    {
        cvec reflection(phases.size());
        for (Eigen::Index i = 0; i < phases.size(); ++i)
            reflection(i) = std::polar(1.0, phases(i));
        cmat g_theta = ch.g * reflection.asDiagonal();
        h += (g_theta * ch.h_r) * ch.rho_r.cwiseSqrt().asDiagonal();
    }
    return h;
}

cvec effective_channel(const ChannelRealization &ch, const vec &phases, int device)
{
    if (device < 0 || device >= ch.num_devices())
        throw std::invalid_argument(fmt::format("effective channel: device {} out of range", device));
    return effective_channels(ch, phases).col(device);
}

ChannelMode parse_channel_mode(const std::string &name)
{
    if (name == "rayleigh")
        return ChannelMode::rayleigh;
    if (name == "geometric")
        return ChannelMode::geometric;
    throw ConfigError(fmt::format("unknown channel mode '{}' (expected rayleigh or geometric)", name));
}

const char *to_string(ChannelMode mode)
{
    return mode == ChannelMode::rayleigh ? "rayleigh" : "geometric";
}

} // namespace irsee
