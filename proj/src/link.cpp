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

#include "irsee/link.hpp"

#include <fmt/format.h>

namespace irsee
{

vec sinr_all(const cmat &detection, const cmat &channels, const vec &powers, double noise_power)
{
    const Eigen::Index n = channels.cols();
    if (detection.cols() != n || detection.rows() != channels.rows() || powers.size() != n)
        throw std::invalid_argument(fmt::format("sinr: detection {}x{}, channels {}x{}, {} powers", detection.rows(),
                                                detection.cols(), channels.rows(), channels.cols(), powers.size()));

    // gain(k, i) = p_i |w_k^H h_i|^2
    mat gain = (detection.adjoint() * channels).cwiseAbs2() * powers.asDiagonal();
    vec out(n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const double wnorm2 = detection.col(k).squaredNorm();
        if (!(wnorm2 > 0.0))
            throw std::invalid_argument(fmt::format("sinr: detection vector {} is zero", k));
        const double signal = gain(k, k);
        const double interference = gain.row(k).sum() - signal;
        out(k) = signal / (interference + noise_power * wnorm2);
    }
    return out;
}

double sinr(int k, const cmat &detection, const cmat &channels, const vec &powers, double noise_power)
{
    if (k < 0 || k >= channels.cols())
        throw std::invalid_argument(fmt::format("sinr: device {} out of range", k));
    if (!(detection.col(k).squaredNorm() > 0.0))
        throw std::invalid_argument(fmt::format("sinr: detection vector {} is zero", k));
    double signal = 0.0;
    double interference = 0.0;
    for (Eigen::Index i = 0; i < channels.cols(); ++i)
    {
        const double g = powers(i) * std::norm(detection.col(k).dot(channels.col(i)));
        (i == k ? signal : interference) += g;
    }
    return signal / (interference + noise_power * detection.col(k).squaredNorm());
}

double sinr(int k, const cmat &detection, const vec &phases, const vec &powers, const ChannelRealization &ch,
            double noise_power)
{
    return sinr(k, detection, effective_channels(ch, phases), powers, noise_power);
}

double total_power(const vec &powers, int irs_elements, IrsMode mode, const RadioParams &params)
{
    double p = powers.sum() + params.bs_circuit_power;
    if (mode == IrsMode::on)
        p += irs_elements * params.irs_element_power;
    return p;
}

cmat matched_filter(const cmat &channels)
{
    cmat w(channels.rows(), channels.cols());
    for (Eigen::Index k = 0; k < channels.cols(); ++k)
    {
        const double n = channels.col(k).norm();
        if (n > 0.0)
            w.col(k) = channels.col(k) / n;
        else
        {
            w.col(k).setZero();
            w(0, k) = 1.0;
        }
    }
    return w;
}

LinkMetrics evaluate_link(const cmat &detection, const vec &phases, const vec &powers, const ChannelRealization &ch,
                          const RadioParams &params, IrsMode mode)
{
    if (static_cast<Eigen::Index>(params.data_bits.size()) != ch.num_devices())
        throw std::invalid_argument("evaluate_link: data sizes do not match the device count");
    LinkMetrics m;
    m.sinr = sinr_all(detection, effective_channels(ch, phases), powers, params.noise_power);
    const Eigen::Index n = m.sinr.size();
    m.rate.resize(n);
    m.latency.resize(n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        m.rate(k) = rate(m.sinr(k), params.bandwidth);
        m.latency(k) = latency(params.data_bits[static_cast<size_t>(k)], m.rate(k));
    }
    m.total_power = total_power(powers, ch.irs_elements(), mode, params);
    m.energy_efficiency = m.rate.sum() / m.total_power;
    return m;
}

double energy_efficiency(const cmat &detection, const vec &phases, const vec &powers, const ChannelRealization &ch,
                         const RadioParams &params, IrsMode mode)
{
    return evaluate_link(detection, phases, powers, ch, params, mode).energy_efficiency;
}

} // namespace irsee
