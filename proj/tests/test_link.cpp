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
#include "irsee/link.hpp"

#include <doctest.h>

using namespace irsee;

namespace
{

// Direct-only realization with the given M_B x N channel matrix.
ChannelRealization direct_only(const cmat &h)
{
    ChannelRealization ch;
    ch.h_d = h;
    ch.h_r = cmat(0, h.cols());
    ch.g = cmat(h.rows(), 0);
    ch.rho_d = vec::Ones(h.cols());
    ch.rho_r = vec::Zero(h.cols());
    return ch;
}

RadioParams radio_for(int n)
{
    RadioParams r;
    r.max_tx_power.assign(static_cast<size_t>(n), dbm_to_watts(5.0));
    r.data_bits.assign(static_cast<size_t>(n), 300e3);
    r.deadline.assign(static_cast<size_t>(n), 8.0);
    return r;
}

} // namespace

TEST_CASE("single user without interference")
{
    const cmat h = cmat::Ones(1, 1);
    const vec p = vec::Constant(1, 2.0);
    CHECK(sinr(0, cmat::Ones(1, 1), h, p, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sinr(0, cmat::Constant(1, 1, 5.0), h, p, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    const auto ch = direct_only(h);
    CHECK(sinr(0, cmat::Ones(1, 1), vec(), p, ch, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("two users on one antenna share the signal")
{
    const cmat h = cmat::Ones(1, 2);
    const cmat w = cmat::Ones(1, 2);
    const vec p = vec::Ones(2);
    CHECK(sinr(0, w, h, p, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    const vec all = sinr_all(w, h, p, 1.0);
    CHECK(all[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(all[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("zero detection vector is rejected")
{
    const cmat h = cmat::Ones(2, 2);
    cmat w = cmat::Ones(2, 2);
    w.col(1).setZero();
    CHECK_NOTHROW(sinr(0, w, h, vec::Ones(2), 1.0));
    CHECK_THROWS_AS(sinr(1, w, h, vec::Ones(2), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sinr_all(w, h, vec::Ones(2), 1.0), std::invalid_argument);
}

TEST_CASE("sinr_all agrees with the per-device form")
{
    Rng rng(3);
    for (int t = 0; t < 50; ++t)
    {
        const int n = 1 + t % 5, mb = 1 + t % 4;
        cmat h(mb, n), w(mb, n);
        for (auto &x : h.reshaped())
            x = sample_cn(rng);
        for (auto &x : w.reshaped())
            x = sample_cn(rng);
        const vec p = vec::Random(n).cwiseAbs();
        const vec all = sinr_all(w, h, p, 0.3);
        for (int k = 0; k < n; ++k)
            CHECK(all[k] == doctest::Approx(sinr(k, w, h, p, 0.3)).epsilon(1e-12));
    }
}

TEST_CASE("sinr invariances and monotonicity")
{
    Rng rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t)
    {
        const int n = 2 + t % 4, mb = 1 + t % 3;
        cmat h(mb, n), w(mb, n);
        for (auto &x : h.reshaped())
            x = sample_cn(rng);
        for (auto &x : w.reshaped())
            x = sample_cn(rng);
        vec p(n);
        for (auto &x : p)
            x = 0.01 + u(rng);
        const int k = t % n;
        const double base = sinr(k, w, h, p, 0.1);

        cmat scaled = w;
        scaled.col(k) *= std::polar(0.001 + 100.0 * u(rng), kTwoPi * u(rng));
        CHECK(sinr(k, scaled, h, p, 0.1) == doctest::Approx(base).epsilon(1e-10));

        vec more = p;
        more[k] *= 1.5;
        CHECK(sinr(k, w, h, more, 0.1) > base);

        vec louder = p;
        louder[(k + 1) % n] *= 1.5;
        CHECK(sinr(k, w, h, louder, 0.1) <= base);
    }
}

TEST_CASE("rate")
{
    CHECK(rate(3.0, 1e6) == doctest::Approx(2e6).epsilon(1e-15));
    CHECK(rate(0.0, 1e6) == 0.0);
    CHECK(rate(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // Increasing and concave at sampled points.
    for (double g = 0.0; g < 100.0; g += 0.7)
    {
        const double a = rate(g, 1.0), b = rate(g + 0.1, 1.0), c = rate(g + 0.2, 1.0);
        CHECK(b > a);
        CHECK(b - a >= c - b);
    }
}

TEST_CASE("latency")
{
    CHECK(latency(3e5, 2e6) == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(std::isinf(latency(3e5, 0.0)));
    CHECK(latency(6e5, 2e6) == doctest::Approx(2.0 * latency(3e5, 2e6)).epsilon(1e-15));
}

TEST_CASE("total power")
{
    RadioParams r;
    vec p(2);
    p << 0.001, 0.002;
    const double pr = std::pow(10.0, -2.35);
    CHECK(r.irs_element_power == doctest::Approx(pr).epsilon(1e-14));
    CHECK(r.bs_circuit_power == doctest::Approx(1.0).epsilon(1e-15));
    // 0.003 + 10 * 4.4668e-3 + 1
    CHECK(total_power(p, 10, IrsMode::on, r) == doctest::Approx(0.003 + 10.0 * pr + 1.0).epsilon(1e-14));
    CHECK(total_power(p, 10, IrsMode::on, r) == doctest::Approx(1.04767).epsilon(1e-5));
    CHECK(total_power(vec::Zero(2), 0, IrsMode::off, r) == r.bs_circuit_power);
    CHECK(total_power(p, 10, IrsMode::off, r) == doctest::Approx(1.003).epsilon(1e-15));
}

TEST_CASE("IRS power term is the only difference between modes")
{
    RadioParams r;
    r.bs_circuit_power = 1.0;
    r.irs_element_power = 0.25;
    vec p(3);
    p << 0.5, 0.125, 0.0625;
    for (int mr : {0, 1, 4, 16, 40})
    {
        const double diff = total_power(p, mr, IrsMode::on, r) - total_power(p, mr, IrsMode::off, r);
        CHECK(diff == mr * r.irs_element_power);
    }
    CHECK(total_power(p, 20, IrsMode::on, r) - total_power(p, 10, IrsMode::on, r) == 10 * r.irs_element_power);
}

TEST_CASE("energy efficiency")
{
    // Sum rate 2 Mbps over 1.04767 W.
    const double pr = std::pow(10.0, -2.35);
    const double p_total = 0.003 + 10.0 * pr + 1.0;
    CHECK(2e6 / p_total == doctest::Approx(1.909e6).epsilon(1e-3));

    SUBCASE("zero powers give zero")
    {
        Rng rng(1);
        SystemConfig cfg = make_uniform_system(2, 2, 3);
        const auto ch = sample_channels(cfg, rng);
        const cmat w = matched_filter(effective_channels(ch, vec::Zero(3)));
        CHECK(energy_efficiency(w, vec::Zero(3), vec::Zero(2), ch, cfg.radio, IrsMode::on) == 0.0);
    }
    SUBCASE("linear in bandwidth")
    {
        Rng rng(2);
        SystemConfig cfg = make_uniform_system(3, 2, 4);
        const auto ch = sample_channels(cfg, rng);
        const vec theta = vec::LinSpaced(4, 0.0, 3.0);
        const cmat w = matched_filter(effective_channels(ch, theta));
        const vec p = vec::Constant(3, 1e-3);
        RadioParams scaled = cfg.radio;
        scaled.bandwidth *= 7.5;
        CHECK(energy_efficiency(w, theta, p, ch, scaled, IrsMode::on) ==
              doctest::Approx(7.5 * energy_efficiency(w, theta, p, ch, cfg.radio, IrsMode::on)).epsilon(1e-12));
    }
}

TEST_CASE("single-link EE matches the hand-composed pipeline")
{
    ChannelRealization ch;
    ch.h_d = cmat::Constant(1, 1, cplx(0.3, -0.8));
    ch.h_r = cmat::Constant(2, 1, cplx(1.1, 0.2));
    ch.g = cmat::Constant(1, 2, cplx(-0.4, 0.9));
    ch.rho_d = vec::Constant(1, 1e-9);
    ch.rho_r = vec::Constant(1, 4e-8);
    RadioParams r = radio_for(1);
    vec theta(2);
    theta << 0.4, 2.2;
    const vec p = vec::Constant(1, 2e-3);

    const cplx refl = ch.g(0, 0) * std::polar(1.0, 0.4) * ch.h_r(0, 0) + ch.g(0, 1) * std::polar(1.0, 2.2) * ch.h_r(1, 0);
    const cplx h = std::sqrt(1e-9) * ch.h_d(0, 0) + std::sqrt(4e-8) * refl;
    const double gamma = 2e-3 * std::norm(h) / r.noise_power;
    const double expected = r.bandwidth * std::log2(1.0 + gamma) / (2e-3 + 2 * r.irs_element_power + r.bs_circuit_power);
    const double ee = energy_efficiency(cmat::Ones(1, 1), theta, p, ch, r, IrsMode::on);
    CHECK(std::abs(ee - expected) / expected <= 1e-12);
}

TEST_CASE("evaluate_link bundles per-device metrics")
{
    Rng rng(12);
    SystemConfig cfg = make_uniform_system(3, 4, 5);
    const auto ch = sample_channels(cfg, rng);
    const vec theta = vec::LinSpaced(5, 0.1, 5.0);
    const cmat h = effective_channels(ch, theta);
    const cmat w = matched_filter(h);
    vec p(3);
    p << 1e-3, 0.0, 3e-3;
    const LinkMetrics m = evaluate_link(w, theta, p, ch, cfg.radio, IrsMode::on);
    for (int k = 0; k < 3; ++k)
    {
        CHECK(m.sinr[k] == doctest::Approx(sinr(k, w, h, p, cfg.radio.noise_power)).epsilon(1e-12));
        CHECK(m.rate[k] == doctest::Approx(rate(m.sinr[k], cfg.radio.bandwidth)).epsilon(1e-12));
    }
    CHECK(m.rate[1] == 0.0);
    CHECK(std::isinf(m.latency[1]));
    CHECK(m.latency[0] == doctest::Approx(300e3 / m.rate[0]).epsilon(1e-12));
    CHECK(m.total_power == doctest::Approx(total_power(p, 5, IrsMode::on, cfg.radio)).epsilon(1e-15));
    CHECK(m.energy_efficiency == doctest::Approx(m.rate.sum() / m.total_power).epsilon(1e-12));
    CHECK(m.total_power >= cfg.radio.bs_circuit_power);

    RadioParams bad = cfg.radio;
    bad.data_bits.pop_back();
    CHECK_THROWS(evaluate_link(w, theta, p, ch, bad, IrsMode::on));
}

TEST_CASE("matched filter columns")
{
    Rng rng(5);
    cmat h(3, 4);
    for (auto &x : h.reshaped())
        x = sample_cn(rng);
    h.col(2).setZero();
    const cmat w = matched_filter(h);
    for (int k = 0; k < 4; ++k)
        CHECK(w.col(k).norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(w(0, 2) - cplx(1.0, 0.0)) < 1e-15);
    CHECK((w.col(0) - h.col(0) / h.col(0).norm()).cwiseAbs().maxCoeff() < 1e-15);
}
