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

#include "irsee/verify.hpp"
#include "irsee/baselines.hpp"
#include "irsee/channel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <random>

namespace irsee
{

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

cmat random_cmat(int rows, int cols, Rng &rng)
{
    cmat m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            m(r, c) = sample_cn(rng);
    return m;
}

SinrFn resolve(const VerifyOptions &opt)
{
    if (opt.sinr)
        return opt.sinr;
    return [](int k, const cmat &w, const cmat &h, const vec &p, double noise) { return sinr(k, w, h, p, noise); };
}

struct Instance
{
    cmat h, w;
    vec p;
    double noise;
};

Instance random_instance(Rng &rng)
{
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = dim(rng), mb = dim(rng);
    Instance in;
    in.h = random_cmat(mb, n, rng);
    in.w = random_cmat(mb, n, rng);
    in.p = vec(n);
    for (int k = 0; k < n; ++k)
        in.p[k] = 1e-3 + u(rng);
    in.noise = std::pow(10.0, -3.0 + 3.0 * u(rng));
    return in;
}

double relative(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// Worst relative error between analytic and central-difference gradients.
double gradient_error(const vec &analytic, vec params, const std::function<double(const vec &)> &loss, double h)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < params.size(); ++i)
    {
        const double x = params[i];
        params[i] = x + h;
        const double up = loss(params);
        params[i] = x - h;
        const double down = loss(params);
        params[i] = x;
        const double fd = (up - down) / (2.0 * h);
        const double scale = std::max({std::abs(fd), std::abs(analytic[i]), 1e-6});
        worst = std::max(worst, std::abs(fd - analytic[i]) / scale);
    }
    return worst;
}

vec flatten_grads(const MlpGradients &g)
{
    Eigen::Index n = 0;
    for (size_t l = 0; l < g.weight.size(); ++l)
        n += g.weight[l].size() + g.bias[l].size();
    vec out(n);
    Eigen::Index at = 0;
    for (size_t l = 0; l < g.weight.size(); ++l)
    {
        out.segment(at, g.weight[l].size()) = Eigen::Map<const vec>(g.weight[l].data(), g.weight[l].size());
        at += g.weight[l].size();
        out.segment(at, g.bias[l].size()) = g.bias[l];
        at += g.bias[l].size();
    }
    return out;
}

SuiteResult finish(SuiteResult r, Clock::time_point t0)
{
    r.seconds = seconds_since(t0);
    return r;
}

} // namespace

SuiteResult check_steering_unit_modulus(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    Rng rng = derive_rng(opt.seed, 11);
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < opt.instances; ++i)
    {
        ArrayGrid g{count(rng), count(rng), 0.01 + 0.1 * u(rng), 0.01 + 0.1 * u(rng)};
        const cvec a = steering_vector(g, 0.01 + u(rng), kPi * u(rng), kTwoPi * u(rng));
        worst = std::max(worst, (a.cwiseAbs().array() - 1.0).abs().maxCoeff());
    }
    return finish({"steering-unit-modulus", worst <= 1e-12, worst, 1e-12,
                   fmt::format("{} arrays, max ||a_i| - 1|", opt.instances)},
                  t0);
}

SuiteResult check_sinr_scale_invariance(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    const SinrFn fn = resolve(opt);
    Rng rng = derive_rng(opt.seed, 12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < opt.instances; ++i)
    {
        Instance in = random_instance(rng);
        const int k = static_cast<int>(u(rng) * static_cast<double>(in.p.size())) % static_cast<int>(in.p.size());
        const double base = fn(k, in.w, in.h, in.p, in.noise);
        const cplx c = std::polar(std::pow(10.0, -3.0 + 6.0 * u(rng)), kTwoPi * u(rng));
        cmat scaled = in.w;
        scaled.col(k) *= c;
        worst = std::max(worst, relative(base, fn(k, scaled, in.h, in.p, in.noise)));
    }
    return finish({"sinr-scale-invariance", worst <= 1e-10, worst, 1e-10,
                   fmt::format("{} instances, w_k scaled by c in C, |c| in [1e-3, 1e3]", opt.instances)},
                  t0);
}

SuiteResult check_sinr_power_monotonicity(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    const SinrFn fn = resolve(opt);
    Rng rng = derive_rng(opt.seed, 13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int failures = 0;
    for (int i = 0; i < opt.instances; ++i)
    {
        Instance in = random_instance(rng);
        const int k = static_cast<int>(u(rng) * static_cast<double>(in.p.size())) % static_cast<int>(in.p.size());
        const double before = fn(k, in.w, in.h, in.p, in.noise);
        vec raised = in.p;
        raised[k] *= 1.0 + u(rng) + 1e-3;
        const double after = fn(k, in.w, in.h, raised, in.noise);
        // The own-signal gain is nonzero almost surely for CN draws.
        if (!(after > before))
            ++failures;
    }
    return finish({"sinr-power-monotonicity", failures == 0, static_cast<double>(failures), 0.0,
                   fmt::format("{} instances, count of non-increasing own SINR", opt.instances)},
                  t0);
}

SuiteResult check_total_power_identity(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    Rng rng = derive_rng(opt.seed, 14);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> count(1, 64);
    RadioParams radio;
    int bitwise = 0;
    double worst = 0.0;
    for (int i = 0; i < opt.instances; ++i)
    {
        vec p(count(rng) % 8 + 1);
        for (auto &x : p)
            x = dbm_to_watts(5.0) * u(rng);
        const int mr = count(rng);
        const double on = total_power(p, mr, IrsMode::on, radio);
        const double diff = on - total_power(p, mr, IrsMode::off, radio);
        const double expected = mr * radio.irs_element_power;
        // Error in units of half an ulp of P_on: the rounding of the final addition.
        const double half_ulp = 0.5 * (std::nextafter(on, 2.0 * on) - on);
        worst = std::max(worst, std::abs(diff - expected) / half_ulp);
        bitwise += diff == expected ? 1 : 0;
    }
    return finish({"total-power-identity", worst <= 1.0, worst, 1.0,
                   fmt::format("{} instances, |(P_on - P_off) - M_R p_R| in half-ulps of P_on, {} bitwise equal",
                               opt.instances, bitwise)},
                  t0);
}

SuiteResult check_reward_recomputation(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    Rng rng = derive_rng(opt.seed, 15);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ScenarioParams sp;
    Rng sys_rng = derive_rng(opt.seed, 16);
    const SystemConfig cfg = make_system(sp, sys_rng);
    Environment env(cfg, opt.seed);
    env.reset();
    const auto &r = cfg.radio;
    double worst = 0.0;
    const int steps = std::max(1, opt.instances / 10);
    for (int s = 0; s < steps; ++s)
    {
        vec raw(env.action_dim());
        for (auto &x : raw)
            x = u(rng);
        const PhysicalAction a = env.map_action(raw);
        const StepResult res = env.step(raw);

        // Independent scalar recomputation of sum-rate / power and penalties.
        const auto &ch = env.channel();
        const int n = cfg.num_devices, mb = cfg.bs_antennas, mr = cfg.irs_elements;
        std::vector<cvec> h(n);
        for (int k = 0; k < n; ++k)
        {
            h[k] = cvec(mb);
            for (int b = 0; b < mb; ++b)
            {
                cplx refl = 0.0;
                for (int i = 0; i < mr; ++i)
                    refl += ch.g(b, i) * std::polar(1.0, a.phase[i]) * ch.h_r(i, k);
                h[k][b] = std::sqrt(ch.rho_d[k]) * ch.h_d(b, k) + std::sqrt(ch.rho_r[k]) * refl;
            }
        }
        double sum_rate = 0.0, penalty = 0.0;
        for (int k = 0; k < n; ++k)
        {
            double signal = 0.0, interference = 0.0, wn = 0.0;
            for (int i = 0; i < n; ++i)
            {
                cplx dot = 0.0;
                for (int b = 0; b < mb; ++b)
                    dot += std::conj(a.detection(b, k)) * h[i][b];
                (i == k ? signal : interference) += a.power[i] * std::norm(dot);
            }
            for (int b = 0; b < mb; ++b)
                wn += std::norm(a.detection(b, k));
            const double rate_k = r.bandwidth * std::log2(1.0 + signal / (interference + r.noise_power * wn));
            sum_rate += rate_k;
            if (!(rate_k > 0.0) || r.data_bits[k] / rate_k > r.deadline[k])
                penalty += cfg.penalty[k];
        }
        double p_total = r.bs_circuit_power + mr * r.irs_element_power;
        for (int k = 0; k < n; ++k)
            p_total += a.power[k];
        const double expected = sum_rate / p_total / cfg.reward_scale - penalty;
        worst = std::max(worst, std::abs(expected - res.reward) / std::max(1.0, std::abs(expected)));
    }
    return finish({"reward-recomputation", worst <= 1e-12, worst, 1e-12,
                   fmt::format("{} random steps on the default scenario", steps)},
                  t0);
}

SuiteResult check_gradients(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    Rng rng = derive_rng(opt.seed, 17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int s_dim = 4, a_dim = 3, batch = 5;
    const double h = 1e-6;
    auto random_mat = [&](int r, int c) {
        mat m(r, c);
        for (auto &x : m.reshaped())
            x = u(rng);
        return m;
    };

    double worst = 0.0;

    // Critic regression gradient.
    Mlp critic = make_critic(s_dim, a_dim, {6, 5}, rng);
    const mat states = random_mat(s_dim, batch);
    const mat actions = random_mat(a_dim, batch);
    const mat input = critic_input(states, actions);
    const mat targets = random_mat(1, batch);
    {
        const vec analytic = flatten_grads(squared_error_gradients(critic, input, targets));
        Mlp probe = critic;
        worst = std::max(worst, gradient_error(analytic, critic.flatten(), [&](const vec &p) {
                             probe.unflatten(p);
                             return squared_error(probe, input, targets);
                         }, h));
    }

    // Critic input gradient dQ/da.
    {
        ForwardCache cache;
        critic.forward(input, cache);
        mat grad_in;
        critic.backward(cache, mat::Ones(1, batch), nullptr, &grad_in);
        vec flat_in = input.reshaped();
        const vec analytic = grad_in.reshaped();
        worst = std::max(worst, gradient_error(analytic, flat_in, [&](const vec &x) {
                             const mat m = x.reshaped(input.rows(), input.cols());
                             return critic.forward(m).sum();
                         }, h));
    }

    // Deterministic policy gradient through the critic.
    Mlp actor = make_actor(s_dim, a_dim, {6, 5}, rng);
    {
        const vec analytic = flatten_grads(actor_loss_gradients(actor, critic, states));
        Mlp probe = actor;
        worst = std::max(worst, gradient_error(analytic, actor.flatten(), [&](const vec &p) {
                             probe.unflatten(p);
                             return -critic.forward(critic_input(states, probe.forward(states))).mean();
                         }, h));
    }

    return finish({"gradient-check", worst < 1e-4, worst, 1e-4,
                   "critic loss, critic input and actor objective vs central differences, h = 1e-6"},
                  t0);
}

SuiteResult check_replay_capacity(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    Rng rng = derive_rng(opt.seed, 18);
    const size_t capacity = 17;
    ReplayMemory memory(capacity);
    std::string problem;
    for (int i = 0; i < 100 && problem.empty(); ++i)
    {
        Transition t{vec::Constant(2, i), vec::Constant(1, i), static_cast<double>(i), vec::Constant(2, i + 1)};
        memory.push(std::move(t));
        const size_t expect = std::min<size_t>(static_cast<size_t>(i) + 1, capacity);
        if (memory.size() != expect)
            problem = fmt::format("size {} after {} pushes", memory.size(), i + 1);
        else if (memory.at(0).reward != static_cast<double>(i + 1 - static_cast<int>(expect)))
            problem = fmt::format("oldest retained reward {} after {} pushes", memory.at(0).reward, i + 1);
        else if (memory.at(expect - 1).reward != static_cast<double>(i))
            problem = "newest transition not last";
    }
    if (problem.empty())
    {
        const Batch b = memory.sample(capacity, rng);
        for (Eigen::Index j = 0; j < b.size(); ++j)
            if (b.rewards[j] < 100.0 - static_cast<double>(capacity) || b.rewards[j] > 99.0 ||
                b.states(0, j) != b.rewards[j])
                problem = "sample outside retained window";
    }
    return finish({"replay-capacity", problem.empty(), 0.0, 0.0,
                   problem.empty() ? "FIFO eviction, bounded size, samples from retained window" : problem},
                  t0);
}

SuiteResult check_determinism(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    ScenarioParams sp;
    sp.num_devices = 2;
    sp.bs_antennas = 2;
    sp.irs_elements = 4;
    DdpgHyper hyper;
    hyper.episodes = 3;
    hyper.steps = 20;
    hyper.batch_size = 8;
    hyper.actor_hidden = {16};
    hyper.critic_hidden = {16};

    auto once = [&](std::uint64_t seed) {
        Rng sys = derive_rng(seed, 0);
        const SystemConfig cfg = make_system(sp, sys);
        Environment env(cfg, seed);
        Rng rng = derive_rng(seed, 1);
        DdpgAgent agent(env.observation_dim(), env.action_dim(), hyper, rng);
        const TrainingLog log = train(env, agent, hyper, rng);
        return std::make_pair(log, agent.actor().flatten());
    };
    const auto a = once(opt.seed), b = once(opt.seed), c = once(opt.seed + 1);
    bool same = a.first.episodes.size() == b.first.episodes.size() && a.second == b.second;
    for (size_t i = 0; same && i < a.first.episodes.size(); ++i)
        same = a.first.episodes[i].mean_reward == b.first.episodes[i].mean_reward &&
               a.first.episodes[i].mean_ee == b.first.episodes[i].mean_ee &&
               a.first.episodes[i].violations == b.first.episodes[i].violations;
    const bool differs = a.second != c.second;
    return finish({"determinism", same && differs, 0.0, 0.0,
                   same ? (differs ? "same seed bitwise identical, different seed differs"
                                   : "different seeds produced identical actors")
                        : "same seed produced different runs"},
                  t0);
}

SuiteResult check_oracle_consistency(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    ScenarioParams sp;
    sp.num_devices = 1;
    sp.bs_antennas = 1;
    sp.irs_elements = 2;
    QuantizedActionGrid grid;
    grid.phase_levels = 16;
    grid.power_levels = 8;
    double worst = 0.0;
    int feasible = 0;
    for (std::uint64_t s = 0; s < 5; ++s)
    {
        Rng sys = derive_rng(opt.seed + s, 0);
        const SystemConfig cfg = make_system(sp, sys);
        Environment env(cfg, opt.seed + s);
        env.reset();
        const OracleResult res = grid_search_oracle(cfg, env.channel(), grid);
        if (!res.feasible)
            continue;
        ++feasible;
        const double ee = env.evaluate(res.best_action).energy_efficiency;
        worst = std::max(worst, relative(ee, res.best_ee));
    }
    return finish({"oracle-consistency", feasible > 0 && worst <= 1e-12, worst, 1e-12,
                   fmt::format("{} feasible tiny instances, 16 phase x 8 power levels", feasible)},
                  t0);
}

bool VerifyReport::all_passed() const
{
    for (const auto &s : suites)
        if (!s.passed)
            return false;
    return !suites.empty();
}

const SuiteResult *VerifyReport::find(const std::string &name) const
{
    for (const auto &s : suites)
        if (s.name == name)
            return &s;
    return nullptr;
}

VerifyReport verify(const VerifyOptions &opt)
{
    const auto t0 = Clock::now();
    VerifyReport report;
    using Check = SuiteResult (*)(const VerifyOptions &);
    const Check checks[] = {check_steering_unit_modulus, check_sinr_scale_invariance, check_sinr_power_monotonicity,
                            check_total_power_identity,  check_reward_recomputation,  check_gradients,
                            check_replay_capacity,       check_determinism,           check_oracle_consistency};
    for (Check c : checks)
    {
        try
        {
            report.suites.push_back(c(opt));
        }
        catch (const std::exception &e)
        {
            report.suites.push_back({"exception", false, 0.0, 0.0, e.what(), 0.0});
        }
    }
    report.seconds = seconds_since(t0);
    return report;
}

void print_report(std::ostream &out, const VerifyReport &report)
{
    for (const auto &s : report.suites)
        out << fmt::format("[{}] {:<26} metric {:.3e} (limit {:.1e})  {:.2f}s  {}\n", s.passed ? "PASS" : "FAIL",
                           s.name, s.metric, s.threshold, s.seconds, s.detail);
    out << fmt::format("{} of {} suites passed in {:.2f}s\n",
                       std::count_if(report.suites.begin(), report.suites.end(),
                                     [](const SuiteResult &s) { return s.passed; }),
                       report.suites.size(), report.seconds);
}

} // namespace irsee
