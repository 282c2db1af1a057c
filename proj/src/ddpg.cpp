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

#include "irsee/ddpg.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>

namespace irsee
{

void DdpgHyper::validate() const
{
    auto require = [](bool ok, const char *key, const std::string &what) {
        if (!ok)
            throw ConfigError(fmt::format("{}: {}", key, what));
    };
    require(discount >= 0.0 && discount <= 1.0, "discount", "must lie in [0, 1]");
    require(soft_update_rate > 0.0 && soft_update_rate <= 1.0, "soft_update_rate", "must lie in (0, 1]");
    require(actor_lr > 0.0, "actor_lr", "must be positive");
    require(critic_lr > 0.0, "critic_lr", "must be positive");
    require(noise_std >= 0.0, "noise_std", "must be non-negative");
    require(noise_decay > 0.0 && noise_decay <= 1.0, "noise_decay", "must lie in (0, 1]");
    require(batch_size >= 1, "batch_size", "must be >= 1");
    require(memory_capacity >= static_cast<size_t>(batch_size), "replay_capacity", "must be >= batch_size");
    require(episodes >= 1, "episodes", "must be >= 1");
    require(steps >= 1, "steps", "must be >= 1");
    for (int h : actor_hidden)
        require(h >= 1, "actor_hidden", "layer sizes must be positive");
    for (int h : critic_hidden)
        require(h >= 1, "critic_hidden", "layer sizes must be positive");
}

namespace
{

std::vector<int> chain(int in, const std::vector<int> &hidden, int out)
{
    std::vector<int> sizes{in};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(out);
    return sizes;
}

std::vector<Activation> hidden_then(size_t hidden, Activation last)
{
    std::vector<Activation> a(hidden, Activation::relu);
    a.push_back(last);
    return a;
}

} // namespace

Mlp make_actor(int state_dim, int action_dim, const std::vector<int> &hidden, Rng &rng)
{
    return Mlp::uniform_init(chain(state_dim, hidden, action_dim), hidden_then(hidden.size(), Activation::tanh), rng);
}

Mlp make_critic(int state_dim, int action_dim, const std::vector<int> &hidden, Rng &rng)
{
    return Mlp::uniform_init(chain(state_dim + action_dim, hidden, 1), hidden_then(hidden.size(), Activation::identity),
                             rng);
}

DdpgAgent::DdpgAgent(int state_dim, int action_dim, const DdpgHyper &hyper, Rng &rng)
    : state_dim_(state_dim), action_dim_(action_dim), hyper_(hyper)
{
    hyper_.validate();
    actor_ = make_actor(state_dim, action_dim, hyper_.actor_hidden, rng);
    critic_ = make_critic(state_dim, action_dim, hyper_.critic_hidden, rng);
    actor_target_ = actor_;
    critic_target_ = critic_;
    actor_opt_ = Optimizer(hyper_.optimizer, hyper_.actor_lr);
    critic_opt_ = Optimizer(hyper_.optimizer, hyper_.critic_lr);
}

vec DdpgAgent::act(const vec &state) const
{
    return actor_.forward(state);
}

vec DdpgAgent::select_action(const vec &state, double noise_std, Rng &rng) const
{
    vec a = act(state);
    if (noise_std > 0.0)
    {
        std::normal_distribution<double> noise(0.0, noise_std);
        for (Eigen::Index i = 0; i < a.size(); ++i)
            a(i) += noise(rng);
    }
    return a.cwiseMax(-1.0).cwiseMin(1.0);
}

void DdpgAgent::update(const Batch &batch)
{
    const vec z = target_value(batch, actor_target_, critic_target_, hyper_.discount);
    critic_update(critic_, critic_opt_, batch, z);
    actor_update(actor_, actor_opt_, critic_, batch);
    if (!actor_.all_finite() || !critic_.all_finite())
        throw DivergenceError("network parameters became non-finite");
    soft_update(critic_, critic_target_, hyper_.soft_update_rate);
    soft_update(actor_, actor_target_, hyper_.soft_update_rate);
}

mat critic_input(const mat &states, const mat &actions)
{
    if (states.cols() != actions.cols())
        throw std::invalid_argument("critic_input: batch sizes differ");
    mat x(states.rows() + actions.rows(), states.cols());
    x.topRows(states.rows()) = states;
    x.bottomRows(actions.rows()) = actions;
    return x;
}

vec target_value(const Batch &batch, const Mlp &target_actor, const Mlp &target_critic, double discount)
{
    const mat next_actions = target_actor.forward(batch.next_states);
    const mat q = target_critic.forward(critic_input(batch.next_states, next_actions));
    return batch.rewards + discount * q.row(0).transpose();
}

double critic_update(Mlp &critic, Optimizer &opt, const Batch &batch, const vec &targets)
{
    if (targets.size() != batch.size() || batch.size() == 0)
        throw std::invalid_argument("critic_update: targets do not match the batch");
    ForwardCache cache;
    const mat &q = critic.forward(critic_input(batch.states, batch.actions), cache);
    const vec err = q.row(0).transpose() - targets;
    const double n = static_cast<double>(batch.size());
    const double loss = err.squaredNorm() / n;
    mat grad_out = (2.0 / n) * err.transpose();
    MlpGradients g = critic.zeros_like();
    critic.backward(cache, grad_out, &g, nullptr);
    if (!g.all_finite())
        throw DivergenceError(fmt::format("critic gradient is not finite (loss {})", loss));
    opt.descend(critic, g);
    return loss;
}

MlpGradients actor_loss_gradients(const Mlp &actor, const Mlp &critic, const mat &states)
{
    ForwardCache actor_cache;
    const mat &actions = actor.forward(states, actor_cache);
    ForwardCache critic_cache;
    critic.forward(critic_input(states, actions), critic_cache);

    const double n = static_cast<double>(states.cols());
    mat grad_q = mat::Constant(1, states.cols(), -1.0 / n);
    mat grad_in;
    critic.backward(critic_cache, grad_q, nullptr, &grad_in);

    MlpGradients g = actor.zeros_like();
    actor.backward(actor_cache, grad_in.bottomRows(actions.rows()), &g, nullptr);
    return g;
}

void actor_update(Mlp &actor, Optimizer &opt, const Mlp &critic, const Batch &batch)
{
    MlpGradients g = actor_loss_gradients(actor, critic, batch.states);
    if (!g.all_finite())
        throw DivergenceError("actor gradient is not finite");
    opt.descend(actor, g);
}

TrainingLog train(Environment &env, const DdpgHyper &hyper, Rng &rng)
{
    DdpgAgent agent(env.observation_dim(), env.action_dim(), hyper, rng);
    return train(env, agent, hyper, rng);
}

TrainingLog train(Environment &env, DdpgAgent &agent, const DdpgHyper &hyper, Rng &rng)
{
    hyper.validate();
    if (agent.state_dim() != env.observation_dim() || agent.action_dim() != env.action_dim())
        throw std::invalid_argument("train: agent dimensions do not match the environment");

    TrainingLog log;
    ReplayMemory memory(hyper.memory_capacity);
    const auto batch = static_cast<size_t>(hyper.batch_size);
    double noise = hyper.noise_std;

    for (int e = 0; e < hyper.episodes; ++e)
    {
        vec state = env.features(env.reset());
        EpisodeRecord rec;
        rec.episode = e;
        try
        {
            for (int t = 0; t < hyper.steps; ++t)
            {
                vec action = agent.select_action(state, noise, rng);
                StepResult step = env.step(action);
                if (!std::isfinite(step.reward))
                    throw DivergenceError(fmt::format("non-finite reward at episode {} step {}", e, t));
                vec next = env.features(step.next_observation);
                rec.mean_reward += step.reward;
                rec.mean_ee += step.metrics.energy_efficiency;
                rec.violations += std::count(step.violations.begin(), step.violations.end(), true);
                memory.push({state, action, step.reward, next});
                state = std::move(next);
                if (memory.can_sample(batch))
                {
                    agent.update(memory.sample(batch, rng));
                    ++log.updates;
                }
            }
        }
        catch (const DivergenceError &err)
        {
            log.aborted = true;
            log.failure = err.what();
            return log;
        }
        rec.mean_reward /= hyper.steps;
        rec.mean_ee /= hyper.steps;
        log.episodes.push_back(rec);
        noise *= hyper.noise_decay;
    }
    return log;
}

FinalWindow final_window(const TrainingLog &log, double fraction)
{
    FinalWindow w;
    const size_t n = log.episodes.size();
    if (n == 0)
        return w;
    const size_t count = std::max<size_t>(1, static_cast<size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)));
    for (size_t i = n - count; i < n; ++i)
    {
        w.reward += log.episodes[i].mean_reward;
        w.ee += log.episodes[i].mean_ee;
        w.violations += static_cast<double>(log.episodes[i].violations);
    }
    w.reward /= static_cast<double>(count);
    w.ee /= static_cast<double>(count);
    w.violations /= static_cast<double>(count);
    return w;
}

namespace
{

constexpr int kCheckpointVersion = 1;

nlohmann::json net_to_json(const Mlp &net)
{
    nlohmann::json layers = nlohmann::json::array();
    for (const auto &l : net.layers())
    {
        std::vector<double> w(l.weight.data(), l.weight.data() + l.weight.size());
        std::vector<double> b(l.bias.data(), l.bias.data() + l.bias.size());
        layers.push_back({{"rows", l.weight.rows()},
                          {"cols", l.weight.cols()},
                          {"activation", to_string(l.activation)},
                          {"weight", w},
                          {"bias", b}});
    }
    return layers;
}

Mlp net_from_json(const nlohmann::json &j)
{
    std::vector<int> sizes;
    std::vector<Activation> acts;
    for (const auto &l : j)
    {
        if (sizes.empty())
            sizes.push_back(l.at("cols").get<int>());
        sizes.push_back(l.at("rows").get<int>());
        acts.push_back(parse_activation(l.at("activation").get<std::string>()));
    }
    Mlp net(sizes, acts);
    size_t i = 0;
    for (const auto &l : j)
    {
        auto w = l.at("weight").get<std::vector<double>>();
        auto b = l.at("bias").get<std::vector<double>>();
        auto &layer = net.layers()[i++];
        if (w.size() != static_cast<size_t>(layer.weight.size()) || b.size() != static_cast<size_t>(layer.bias.size()))
            throw std::runtime_error("checkpoint: layer payload does not match its shape");
        layer.weight = Eigen::Map<mat>(w.data(), layer.weight.rows(), layer.weight.cols());
        layer.bias = Eigen::Map<vec>(b.data(), layer.bias.size());
    }
    return net;
}

} // namespace

void save_checkpoint(const std::string &path, const DdpgAgent &agent, std::uint64_t seed)
{
    const auto &h = agent.hyper();
    nlohmann::json j;
    j["format"] = "irsee-ddpg-checkpoint";
    j["version"] = kCheckpointVersion;
    j["seed"] = seed;
    j["state_dim"] = agent.state_dim();
    j["action_dim"] = agent.action_dim();
    j["hyper"] = {{"discount", h.discount},
                  {"actor_lr", h.actor_lr},
                  {"critic_lr", h.critic_lr},
                  {"soft_update_rate", h.soft_update_rate},
                  {"noise_std", h.noise_std},
                  {"noise_decay", h.noise_decay},
                  {"batch_size", h.batch_size},
                  {"replay_capacity", h.memory_capacity},
                  {"episodes", h.episodes},
                  {"steps", h.steps},
                  {"actor_hidden", h.actor_hidden},
                  {"critic_hidden", h.critic_hidden},
                  {"optimizer", to_string(h.optimizer)}};
    j["actor"] = net_to_json(agent.actor());
    j["critic"] = net_to_json(agent.critic());
    j["actor_target"] = net_to_json(agent.actor_target());
    j["critic_target"] = net_to_json(agent.critic_target());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(fmt::format("cannot write checkpoint '{}'", path));
    out << j.dump() << '\n';
}

DdpgAgent load_checkpoint(const std::string &path, std::uint64_t *seed)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(fmt::format("cannot read checkpoint '{}'", path));
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != "irsee-ddpg-checkpoint" || j.value("version", 0) != kCheckpointVersion)
        throw std::runtime_error(fmt::format("'{}' is not a version {} checkpoint", path, kCheckpointVersion));
    const auto &jh = j.at("hyper");
    DdpgHyper h;
    h.discount = jh.at("discount");
    h.actor_lr = jh.at("actor_lr");
    h.critic_lr = jh.at("critic_lr");
    h.soft_update_rate = jh.at("soft_update_rate");
    h.noise_std = jh.at("noise_std");
    h.noise_decay = jh.at("noise_decay");
    h.batch_size = jh.at("batch_size");
    h.memory_capacity = jh.at("replay_capacity");
    h.episodes = jh.at("episodes");
    h.steps = jh.at("steps");
    h.actor_hidden = jh.at("actor_hidden").get<std::vector<int>>();
    h.critic_hidden = jh.at("critic_hidden").get<std::vector<int>>();
    h.optimizer = parse_optimizer(jh.at("optimizer").get<std::string>());
    if (seed)
        *seed = j.at("seed").get<std::uint64_t>();

    Rng scratch(0);
    DdpgAgent agent(j.at("state_dim").get<int>(), j.at("action_dim").get<int>(), h, scratch);
    agent.actor() = net_from_json(j.at("actor"));
    agent.critic() = net_from_json(j.at("critic"));
    agent.actor_target() = net_from_json(j.at("actor_target"));
    agent.critic_target() = net_from_json(j.at("critic_target"));
    return agent;
}

} // namespace irsee
