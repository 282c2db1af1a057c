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

// One (s, a, r, s') record. States are stored as the agent sees them
// (Environment::features of the observation).
struct Transition
{
    vec state;
    vec action;
    double reward = 0.0;
    vec next_state;
};

// Column-stacked minibatch.
struct Batch
{
    mat states;
    mat actions;
    vec rewards;
    mat next_states;

    Eigen::Index size() const { return rewards.size(); }
};

// Bounded FIFO of transitions with uniform sampling (with replacement).
class ReplayMemory
{
  public:
    explicit ReplayMemory(size_t capacity);

    void push(Transition t);

    size_t size() const { return items_.size(); }
    size_t capacity() const { return capacity_; }
    bool can_sample(size_t batch) const { return batch > 0 && size() >= batch; }

    // Logical index: 0 is the oldest retained transition.
    const Transition &at(size_t i) const;

    Batch sample(size_t batch, Rng &rng) const;

  private:
    size_t capacity_;
    size_t head_ = 0;   // position of the oldest item once full
    std::vector<Transition> items_;
};

} // namespace irsee
