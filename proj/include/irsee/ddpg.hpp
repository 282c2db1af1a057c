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

#include "irsee/env.hpp"
#include "irsee/nn.hpp"
#include "irsee/replay.hpp"

#include <string>
#include <vector>

namespace irsee
{

struct DdpgHyper
{
    double discount = 0.9;
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    double soft_update_rate = 0.001;
    double noise_std = 0.2;
    double noise_decay = 0.995;   // per episode
    int batch_size = 64;
    size_t memory_capacity = 1'000'000;
    int episodes = 500;
    int steps = 100;
    std::vector<int> actor_hidden{128, 128};
    std::vector<int> critic_hidden{128, 128};
    OptimizerKind optimizer = OptimizerKind::sgd;

    void validate() const;
};

// Actor mu(s) -> [-1, 1]^A through a tanh output; critic Q([s; a]) -> scalar.
class DdpgAgent
{
  public:
    DdpgAgent(int state_dim, int action_dim, const DdpgHyper &hyper, Rng &rng);

    int state_dim() const { return state_dim_; }
    int action_dim() const { return action_dim_; }

    vec act(const vec &state) const;

    // mu(s) + N(0, noise_std^2) per coordinate, clipped to [-1, 1].
    vec select_action(const vec &state, double noise_std, Rng &rng) const;

    // Critic step, actor step, then both soft target updates.
    void update(const Batch &batch);

    Mlp &actor() { return actor_; }
    Mlp &critic() { return critic_; }
    Mlp &actor_target() { return actor_target_; }
    Mlp &critic_target() { return critic_target_; }
    const Mlp &actor() const { return actor_; }
    const Mlp &critic() const { return critic_; }
    const Mlp &actor_target() const { return actor_target_; }
    const Mlp &critic_target() const { return critic_target_; }
    const DdpgHyper &hyper() const { return hyper_; }

  private:
    int state_dim_;
    int action_dim_;
    DdpgHyper hyper_;
    Mlp actor_, critic_, actor_target_, critic_target_;
    Optimizer actor_opt_, critic_opt_;
};

Mlp make_actor(int state_dim, int action_dim, const std::vector<int> &hidden, Rng &rng);
Mlp make_critic(int state_dim, int action_dim, const std::vector<int> &hidden, Rng &rng);

// Stacks states over actions as critic input.
mat critic_input(const mat &states, const mat &actions);

// z_i = r_i + discount * Q'(s'_i, mu'(s'_i)).
vec target_value(const Batch &batch, const Mlp &target_actor, const Mlp &target_critic, double discount);

// One step on mean_i (z_i - Q(s_i, a_i))^2. Returns the loss before the step.
double critic_update(Mlp &critic, Optimizer &opt, const Batch &batch, const vec &targets);

// One ascent step on mean_i Q(s_i, mu(s_i)) with the critic held fixed.
void actor_update(Mlp &actor, Optimizer &opt, const Mlp &critic, const Batch &batch);

// Gradient of -mean_i Q(s_i, mu(s_i)) with respect to the actor parameters.
MlpGradients actor_loss_gradients(const Mlp &actor, const Mlp &critic, const mat &states);

struct EpisodeRecord
{
    int episode = 0;
    double mean_reward = 0.0;
    double mean_ee = 0.0;   // bps/W
    long violations = 0;    // deadline misses summed over the episode's steps
};

struct TrainingLog
{
    std::vector<EpisodeRecord> episodes;
    bool aborted = false;
    std::string failure;
    long updates = 0;
};

// Runs DDPG training for hyper.episodes x hyper.steps on the environment.
// Channels come from the environment's own engine; rng drives network
// initialisation, exploration noise and minibatch sampling.
TrainingLog train(Environment &env, DdpgAgent &agent, const DdpgHyper &hyper, Rng &rng);
TrainingLog train(Environment &env, const DdpgHyper &hyper, Rng &rng);

// Mean of the last ceil(10%) of the episodes.
struct FinalWindow
{
    double reward = 0.0;
    double ee = 0.0;
    double violations = 0.0;
};
FinalWindow final_window(const TrainingLog &log, double fraction = 0.1);

// Versioned JSON checkpoint of all four networks plus hyperparameters and seed.
void save_checkpoint(const std::string &path, const DdpgAgent &agent, std::uint64_t seed);
DdpgAgent load_checkpoint(const std::string &path, std::uint64_t *seed = nullptr);

} // namespace irsee
