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

#include "irsee/harness.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace irsee;
namespace fs = std::filesystem;

namespace
{

RunConfig quick(const fs::path &out)
{
    RunConfig c = parse_config("num_devices = 2\n"
                               "bs_antennas = 2\n"
                               "irs_elements = 4\n"
                               "episodes = 10\n"
                               "steps = 10\n"
                               "batch_size = 8\n"
                               "actor_hidden = 8\n"
                               "critic_hidden = 8\n"
                               "optimizer = adam\n");
    c.output_dir = out.string();
    return c;
}

fs::path fresh_dir(const std::string &name)
{
    const fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> snapshot(const fs::path &dir)
{
    std::map<std::string, std::string> out;
    for (const auto &e : fs::directory_iterator(dir))
        out[e.path().filename().string()] = slurp(e.path());
    return out;
}

} // namespace

TEST_CASE("presets")
{
    const auto presets = sweep_presets();
    CHECK(presets.size() == 5);
    CHECK(find_preset("irs-elements").sweep.parameter == "irs_elements");
    CHECK(find_preset("irs-elements").sweep.values == std::vector<double>{10, 20, 30});
    CHECK(find_preset("iot-devices").sweep.values == std::vector<double>{4, 6, 8});
    CHECK(find_preset("bs-antennas").sweep.values == std::vector<double>{3, 5, 7});
    CHECK(find_preset("discount").sweep.values == std::vector<double>{0.7, 0.8, 0.9});
    CHECK(find_preset("update-rate").sweep.values == std::vector<double>{0.01, 0.001, 0.0001});
    CHECK(find_preset("iot-devices").strategies.size() == 2);
    CHECK_THROWS_AS(find_preset("nope"), ConfigError);
}

TEST_CASE("three sweep values and five seeds give fifteen curves and one summary")
{
    const fs::path dir = fresh_dir("irsee_harness_count");
    RunConfig c = quick(dir);
    c.sweep = SweepSpec{"discount", {0.7, 0.8, 0.9}};
    c.workers = 2;
    const HarnessResult r = run(c);
    CHECK(r.ok());
    int curves = 0, summaries = 0, other = 0;
    for (const auto &e : fs::directory_iterator(dir))
    {
        const std::string n = e.path().filename().string();
        if (n.rfind("curve_", 0) == 0)
            ++curves;
        else if (n == "summary.csv")
            ++summaries;
        else
            ++other;
    }
    CHECK(curves == 15);
    CHECK(summaries == 1);
    CHECK(other == 0);
    fs::remove_all(dir);
}

TEST_CASE("reruns are byte identical regardless of worker count")
{
    const fs::path d1 = fresh_dir("irsee_harness_rerun1");
    const fs::path d2 = fresh_dir("irsee_harness_rerun2");
    RunConfig c = quick(d1);
    c.seeds = {1, 2};
    c.strategies = {Strategy::ddpg_irs, Strategy::ddpg_no_irs, Strategy::random};
    c.workers = 1;
    run(c);
    c.output_dir = d2.string();
    c.workers = 3;
    run(c);
    const auto a = snapshot(d1), b = snapshot(d2);
    CHECK(a.size() == 7);
    CHECK(a == b);
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("curve files carry metadata and the summary is reproducible from them")
{
    const fs::path dir = fresh_dir("irsee_harness_meta");
    RunConfig c = quick(dir);
    c.seeds = {4, 5, 6};
    c.sweep = SweepSpec{"irs_elements", {2, 4}};
    const HarnessResult r = run(c);
    REQUIRE(r.ok());
    for (const auto &row : r.summary)
    {
        std::vector<double> ee;
        for (const auto &j : r.jobs)
        {
            if (*j.job.sweep_value != *row.sweep_value)
                continue;
            std::ifstream in(dir / j.curve_file);
            std::string line;
            std::vector<double> col;
            bool header = false;
            int meta = 0;
            while (std::getline(in, line))
            {
                if (line.rfind("# ", 0) == 0)
                {
                    ++meta;
                    continue;
                }
                if (!header)
                {
                    CHECK(line == "episode,mean_reward,energy_efficiency_bps_per_w,violations");
                    header = true;
                    continue;
                }
                const auto a = line.find(','), b = line.find(',', a + 1), d = line.find(',', b + 1);
                col.push_back(std::stod(line.substr(b + 1, d - b - 1)));
            }
            CHECK(meta >= 5);
            REQUIRE(col.size() == 10);
            // Last 10% of 10 episodes is the final episode.
            ee.push_back(col.back());
        }
        double mean = 0.0;
        for (double x : ee)
            mean += x;
        mean /= static_cast<double>(ee.size());
        CHECK(mean == row.ee_mean);
    }
    const std::string first = slurp(dir / r.jobs.front().curve_file);
    CHECK(first.find("# schema_version: 1\n") == 0);
    CHECK(first.find("# config_hash: ") != std::string::npos);
    CHECK(first.find("# seed: 4\n") != std::string::npos);
    CHECK(first.find("# code_version: ") != std::string::npos);
    CHECK(first.find("# sweep: irs_elements = 2\n") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cells see the same layout and channels for every strategy of a seed")
{
    RunConfig c = quick(fresh_dir("irsee_harness_unused"));
    const Job a{std::nullopt, 3, Strategy::ddpg_irs};
    const Job b{std::nullopt, 3, Strategy::random};
    const RunConfig ca = cell_config(c, a);
    Rng s1 = derive_rng(3, 0), s2 = derive_rng(3, 0);
    const SystemConfig x = make_system(ca.scenario, s1);
    const SystemConfig y = make_system(cell_config(c, b).scenario, s2);
    CHECK(x.geometry.iot_positions[0].x == y.geometry.iot_positions[0].x);
    Environment e1(x, 3), e2(y, 3);
    e1.reset();
    e2.reset();
    CHECK(e1.channel().h_d == e2.channel().h_d);
}

TEST_CASE("aborted cells are recorded and the harness carries on")
{
    const fs::path dir = fresh_dir("irsee_harness_abort");
    RunConfig c = quick(dir);
    c.seeds = {1};
    // A huge learning rate drives the networks to non-finite values.
    c.hyper.optimizer = OptimizerKind::sgd;
    c.hyper.actor_lr = 1e300;
    c.hyper.critic_lr = 1e300;
    c.strategies = {Strategy::ddpg_irs, Strategy::random};
    const HarnessResult r = run(c);
    CHECK(r.failures == 1);
    CHECK_FALSE(r.ok());
    CHECK(r.jobs[0].log.aborted);
    CHECK_FALSE(r.jobs[1].log.aborted);
    CHECK(slurp(dir / r.jobs[0].curve_file).find("# status: aborted") != std::string::npos);
    CHECK(r.summary[0].failures == 1);
    fs::remove_all(dir);
}

TEST_CASE("all output stays inside the output directory")
{
    const fs::path root = fresh_dir("irsee_harness_confine");
    fs::create_directories(root);
    const fs::path dir = root / "out";
    RunConfig c = quick(dir);
    c.seeds = {1};
    c.save_checkpoints = true;
    run(c);
    int outside = 0;
    for (const auto &e : fs::directory_iterator(root))
        outside += e.path().filename() == "out" ? 0 : 1;
    CHECK(outside == 0);
    CHECK(fs::exists(dir / "checkpoint_ddpg-irs_seed1.json"));
    fs::remove_all(root);
}
