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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace irsee
{

using SinrFn = std::function<double(int k, const cmat &detection, const cmat &channels, const vec &powers,
                                    double noise_power)>;

struct VerifyOptions
{
    std::uint64_t seed = 7;
    int instances = 1000;
    SinrFn sinr;   // replaces the library SINR when set
};

struct SuiteResult
{
    std::string name;
    bool passed = false;
    double metric = 0.0;      // worst observed error or count, suite specific
    double threshold = 0.0;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport
{
    std::vector<SuiteResult> suites;
    double seconds = 0.0;
    bool all_passed() const;
    const SuiteResult *find(const std::string &name) const;
};

SuiteResult check_steering_unit_modulus(const VerifyOptions &opt);
SuiteResult check_sinr_scale_invariance(const VerifyOptions &opt);
SuiteResult check_sinr_power_monotonicity(const VerifyOptions &opt);
SuiteResult check_total_power_identity(const VerifyOptions &opt);
SuiteResult check_reward_recomputation(const VerifyOptions &opt);
SuiteResult check_gradients(const VerifyOptions &opt);
SuiteResult check_replay_capacity(const VerifyOptions &opt);
SuiteResult check_determinism(const VerifyOptions &opt);
SuiteResult check_oracle_consistency(const VerifyOptions &opt);

VerifyReport verify(const VerifyOptions &opt = {});

void print_report(std::ostream &out, const VerifyReport &report);

} // namespace irsee
