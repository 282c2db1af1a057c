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

#include "irsee/config.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace irsee;

TEST_CASE("empty text yields the default scenario")
{
    const RunConfig c = parse_config("");
    const auto &s = c.scenario;
    CHECK(s.bandwidth == 1e6);
    CHECK(s.noise_power == doctest::Approx(std::pow(10.0, -14.4)).epsilon(1e-14));
    CHECK(s.max_tx_power == doctest::Approx(std::pow(10.0, -2.5)).epsilon(1e-14));
    CHECK(s.bs_circuit_power == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.irs_element_power == doctest::Approx(std::pow(10.0, -2.35)).epsilon(1e-14));
    CHECK(s.deadline == 8.0);
    CHECK(s.penalty == 1.0);
    CHECK(s.data_bits_min == 250e3);
    CHECK(s.data_bits_max == 350e3);
    CHECK(s.path_loss.eta_direct == 3.5);
    CHECK(s.path_loss.eta_reflect == 2.2);
    CHECK(s.cell_radius == 100.0);
    CHECK(c.hyper.memory_capacity == 1'000'000);
    CHECK(c.hyper.batch_size == 64);
    CHECK(c.hyper.discount == 0.9);
    CHECK(c.hyper.soft_update_rate == 0.001);
    CHECK(c.hyper.episodes == 500);
    CHECK(c.hyper.steps == 100);
}

TEST_CASE("units convert to SI")
{
    const RunConfig c = parse_config("max_tx_power = 5dBm\n"
                                     "bs_circuit_power = 500 mW\n"
                                     "bandwidth = 200 kHz\n"
                                     "deadline = 1500 ms\n"
                                     "data_size_min = 0.1 Mb\n"
                                     "data_size_max = 120000 b\n"
                                     "cell_radius = 80 m\n"
                                     "path_loss_reference = -20 dB\n"
                                     "irs_element_power = 0.002 W\n");
    CHECK(c.scenario.max_tx_power == doctest::Approx(3.162e-3).epsilon(1e-4));
    CHECK(c.scenario.bs_circuit_power == doctest::Approx(0.5));
    CHECK(c.scenario.bandwidth == doctest::Approx(2e5));
    CHECK(c.scenario.deadline == doctest::Approx(1.5));
    CHECK(c.scenario.data_bits_min == doctest::Approx(1e5));
    CHECK(c.scenario.data_bits_max == doctest::Approx(1.2e5));
    CHECK(c.scenario.cell_radius == 80.0);
    CHECK(c.scenario.path_loss.l0 == doctest::Approx(1e-2));
    CHECK(c.scenario.irs_element_power == 0.002);
}

TEST_CASE("comments, blanks and lists")
{
    const RunConfig c = parse_config("# comment line\n\n"
                                     "seeds = 3, 4,5   # trailing\n"
                                     "strategies = ddpg-irs, random\n"
                                     "actor_hidden = 32, 16\n"
                                     "optimizer = adam\n"
                                     "sweep_parameter = irs_elements\n"
                                     "sweep_values = 10, 20, 30\n"
                                     "irs_position = 50, 25 m\n");
    CHECK(c.seeds == std::vector<std::uint64_t>{3, 4, 5});
    CHECK(c.strategies == std::vector<Strategy>{Strategy::ddpg_irs, Strategy::random});
    CHECK(c.hyper.actor_hidden == std::vector<int>{32, 16});
    CHECK(c.hyper.optimizer == OptimizerKind::adam);
    REQUIRE(c.sweep.has_value());
    CHECK(c.sweep->parameter == "irs_elements");
    CHECK(c.sweep->values == std::vector<double>{10, 20, 30});
    CHECK(c.scenario.irs_position.x == 50.0);
    CHECK(c.scenario.irs_position.y == 25.0);
}

TEST_CASE("errors name the source, line and key")
{
    auto message = [](const std::string &text) {
        try
        {
            parse_config(text, "test.conf");
        }
        catch (const ConfigError &e)
        {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("bandwidth = -1 MHz").find("bandwidth") != std::string::npos);
    CHECK(message("\nfoo = 3").find("test.conf:2") != std::string::npos);
    CHECK(message("\nfoo = 3").find("unknown key 'foo'") != std::string::npos);
    CHECK(message("max_tx_power = 5").find("unit") != std::string::npos);
    CHECK(message("bandwidth = 5 dBm").find("bandwidth") != std::string::npos);
    CHECK(message("no equals sign").find("test.conf:1") != std::string::npos);
    CHECK(message("seeds =").find("seeds") != std::string::npos);
    CHECK(message("discount = 1.5").find("discount") != std::string::npos);
    CHECK(message("sweep_parameter = noise_power\nsweep_values = 1").find("not sweepable") != std::string::npos);
    CHECK(message("sweep_parameter = num_devices\nsweep_values = 2.5").find("sweep_values") != std::string::npos);
    CHECK(message("sweep_parameter = discount\nsweep_values = 0.5, 2").find("sweep_values") != std::string::npos);
    CHECK(message("strategies = greedy").find("greedy") != std::string::npos);
    CHECK(message("episodes = ten").find("episodes") != std::string::npos);
}

TEST_CASE("sweep values apply to the named parameter")
{
    RunConfig c = parse_config("");
    apply_sweep_value(c, "num_devices", 8);
    apply_sweep_value(c, "bs_antennas", 7);
    apply_sweep_value(c, "irs_elements", 30);
    apply_sweep_value(c, "discount", 0.7);
    apply_sweep_value(c, "soft_update_rate", 0.0001);
    CHECK(c.scenario.num_devices == 8);
    CHECK(c.scenario.bs_antennas == 7);
    CHECK(c.scenario.irs_elements == 30);
    CHECK(c.hyper.discount == 0.7);
    CHECK(c.hyper.soft_update_rate == 0.0001);
    CHECK_THROWS_AS(apply_sweep_value(c, "bandwidth", 1.0), ConfigError);
}

TEST_CASE("canonical text and hash are stable and sensitive")
{
    const RunConfig a = parse_config("");
    const RunConfig b = parse_config("# nothing\n");
    CHECK(a.canonical() == b.canonical());
    CHECK(fnv1a64(a.canonical()) == fnv1a64(b.canonical()));
    const RunConfig c = parse_config("discount = 0.8");
    CHECK(fnv1a64(a.canonical()) != fnv1a64(c.canonical()));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("load_config reads files")
{
    const auto path = std::filesystem::temp_directory_path() / "irsee_config_test.conf";
    {
        std::ofstream out(path);
        out << "num_devices = 4\nbs_antennas = 3\n";
    }
    const RunConfig c = load_config(path.string());
    CHECK(c.scenario.num_devices == 4);
    CHECK(c.scenario.bs_antennas == 3);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config(path.string()), ConfigError);
}
