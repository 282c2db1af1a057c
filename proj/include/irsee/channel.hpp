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

#include "irsee/system.hpp"

namespace irsee
{

// Per-episode channel state. Column k of h_d / h_r belongs to device k.
struct ChannelRealization
{
    cmat h_d;   // M_B x N_I direct channels
    cmat h_r;   // M_R x N_I device -> IRS channels
    cmat g;     // M_B x M_R IRS -> BS channel
    vec rho_d;  // direct-link path gains, one per device
    vec rho_r;  // reflected-link path gains, one per device (0 without IRS)

    int num_devices() const { return static_cast<int>(h_d.cols()); }
    int bs_antennas() const { return static_cast<int>(h_d.rows()); }
    int irs_elements() const { return static_cast<int>(h_r.rows()); }
};

// Steering vector of a uniform planar array, entry (m, n) at index m * count_y + n:
//   exp(-j 2pi/lambda (m dx sin(a) cos(b) + n dy sin(a) sin(b)))
cvec steering_vector(const ArrayGrid &grid, double wavelength, double vertical_angle, double horizontal_angle);

// Rank-one line-of-sight IRS -> BS matrix a_BS a_IRS^H. The geometry form
// takes the bearing from the BS to the IRS with in-plane propagation.
cmat los_irs_bs_matrix(const Geometry &geometry);
cmat los_irs_bs_matrix(const ArrayGrid &bs_grid, const ArrayGrid &irs_grid, double wavelength, double vertical_angle,
                       double horizontal_angle);

// l0 / d^eta_d, with d clamped to 1 m.
double path_loss_direct(Point device, Point bs, const PathLossParams &params);

// l0 / (d(device, irs) + d(irs, bs))^eta_r, with the total clamped to 1 m.
double path_loss_reflect(Point device, Point irs, Point bs, const PathLossParams &params);

// Draws a realization for the configured mode. The direct channels are
// drawn first so that an IRS-disabled system with the same seed sees the same
// direct links as the IRS-enabled one.
ChannelRealization sample_channels(const SystemConfig &config, Rng &rng);
ChannelRealization sample_channels(const SystemConfig &config, Rng &rng, ChannelMode mode);

// h_k = sqrt(rho_d,k) h_d,k + sqrt(rho_r,k) G diag(e^{j theta}) h_r,k for every device, as columns.
cmat effective_channels(const ChannelRealization &ch, const vec &phases);

// Single-device form of effective_channels.
cvec effective_channel(const ChannelRealization &ch, const vec &phases, int device);

ChannelMode parse_channel_mode(const std::string &name);
const char *to_string(ChannelMode mode);

} // namespace irsee
