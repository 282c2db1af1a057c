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

#include "irsee/replay.hpp"

#include <fmt/format.h>

namespace irsee
{

ReplayMemory::ReplayMemory(size_t capacity) : capacity_(capacity)
{
    if (capacity == 0)
        throw std::invalid_argument("replay memory capacity must be positive");
}

void ReplayMemory::push(Transition t)
{
    if (items_.size() < capacity_)
    {
        items_.push_back(std::move(t));
        return;
    }
    items_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
}

const Transition &ReplayMemory::at(size_t i) const
{
    if (i >= items_.size())
        throw std::out_of_range(fmt::format("replay index {} >= size {}", i, items_.size()));
    return items_[(head_ + i) % items_.size()];
}

Batch ReplayMemory::sample(size_t batch, Rng &rng) const
{
    if (!can_sample(batch))
        throw UsageError(fmt::format("cannot sample {} transitions from a memory holding {}", batch, size()));
    const auto &first = items_.front();
    Batch b;
    const auto n = static_cast<Eigen::Index>(batch);
    b.states.resize(first.state.size(), n);
    b.actions.resize(first.action.size(), n);
    b.rewards.resize(n);
    b.next_states.resize(first.next_state.size(), n);
    std::uniform_int_distribution<size_t> pick(0, items_.size() - 1);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        const Transition &t = items_[pick(rng)];
        b.states.col(j) = t.state;
        b.actions.col(j) = t.action;
        b.rewards(j) = t.reward;
        b.next_states.col(j) = t.next_state;
    }
    return b;
}

} // namespace irsee
