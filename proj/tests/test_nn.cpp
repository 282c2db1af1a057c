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

#include "irsee/nn.hpp"

#include <doctest.h>

#include <functional>

using namespace irsee;

namespace
{

vec flatten(const MlpGradients &g)
{
    std::vector<double> out;
    for (size_t l = 0; l < g.weight.size(); ++l)
    {
        out.insert(out.end(), g.weight[l].data(), g.weight[l].data() + g.weight[l].size());
        out.insert(out.end(), g.bias[l].data(), g.bias[l].data() + g.bias[l].size());
    }
    return Eigen::Map<vec>(out.data(), static_cast<Eigen::Index>(out.size()));
}

vec central_difference(const std::function<double(const vec &)> &f, vec x, double h)
{
    vec g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        const double v = x[i];
        x[i] = v + h;
        const double up = f(x);
        x[i] = v - h;
        const double down = f(x);
        x[i] = v;
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

mat random_mat(int r, int c, Rng &rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    mat m(r, c);
    for (auto &x : m.reshaped())
        x = u(rng);
    return m;
}

} // namespace

TEST_CASE("zero network outputs zero")
{
    const Mlp net({3, 4, 2}, {Activation::relu, Activation::tanh});
    CHECK(net.forward(vec(vec::Constant(3, 0.7))).isZero());
    CHECK(net.parameter_count() == 3 * 4 + 4 + 4 * 2 + 2);
}

TEST_CASE("identity linear layer passes the input through")
{
    Mlp net({3, 3}, {Activation::identity});
    net.layers()[0].weight = mat::Identity(3, 3);
    const vec x = vec::LinSpaced(3, -2.0, 5.0);
    CHECK(net.forward(x) == x);
}

TEST_CASE("forward is deterministic and batch consistent")
{
    Rng rng(1);
    const Mlp net = Mlp::uniform_init({5, 8, 3}, {Activation::relu, Activation::tanh}, rng);
    const mat x = random_mat(5, 4, rng);
    const mat y1 = net.forward(x);
    const mat y2 = net.forward(x);
    CHECK(y1 == y2);
    for (int c = 0; c < 4; ++c)
        CHECK((net.forward(vec(x.col(c))) - y1.col(c)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(y1.cwiseAbs().maxCoeff() <= 1.0);
}

TEST_CASE("shape mismatch is rejected")
{
    const Mlp net({3, 2}, {Activation::identity});
    CHECK_THROWS_AS(net.forward(vec(vec::Zero(4))), std::invalid_argument);
    CHECK_THROWS_AS(Mlp({3, 2, 1}, {Activation::relu}), std::invalid_argument);
}

TEST_CASE("uniform initialisation respects the fan-in bound")
{
    Rng rng(2);
    const Mlp net = Mlp::uniform_init({16, 9, 4}, {Activation::relu, Activation::identity}, rng);
    CHECK(net.layers()[0].weight.cwiseAbs().maxCoeff() <= 0.25);
    CHECK(net.layers()[0].bias.cwiseAbs().maxCoeff() <= 0.25);
    CHECK(net.layers()[1].weight.cwiseAbs().maxCoeff() <= 1.0 / 3.0);
    CHECK(net.layers()[0].weight.cwiseAbs().maxCoeff() > 0.2);
}

TEST_CASE("gradients on a 10-parameter net match central differences")
{
    Rng rng(3);
    const Mlp net = Mlp::uniform_init({1, 3, 1}, {Activation::tanh, Activation::identity}, rng);
    REQUIRE(net.parameter_count() == 10);

    const mat x = random_mat(1, 4, rng);
    const mat t = random_mat(1, 4, rng);
    const vec analytic = flatten(squared_error_gradients(net, x, t));
    Mlp probe = net;
    const vec fd = central_difference(
        [&](const vec &p) {
            probe.unflatten(p);
            return squared_error(probe, x, t);
        },
        net.flatten(), 1e-6);
    for (Eigen::Index i = 0; i < fd.size(); ++i)
        CHECK(std::abs(analytic[i] - fd[i]) / std::max(1.0, std::abs(analytic[i])) < 1e-5);
}

TEST_CASE("gradients of deep nets match central differences")
{
    Rng rng(4);
    for (auto act : {Activation::relu, Activation::tanh})
    {
        const Mlp net = Mlp::uniform_init({4, 6, 5, 3}, {act, act, Activation::tanh}, rng);
        const mat x = random_mat(4, 6, rng);
        const mat t = random_mat(3, 6, rng);
        const vec analytic = flatten(squared_error_gradients(net, x, t));
        Mlp probe = net;
        const vec fd = central_difference(
            [&](const vec &p) {
                probe.unflatten(p);
                return squared_error(probe, x, t);
            },
            net.flatten(), 1e-6);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < fd.size(); ++i)
            worst = std::max(worst, std::abs(analytic[i] - fd[i]) / std::max({std::abs(fd[i]), std::abs(analytic[i]), 1e-6}));
        CHECK(worst < 1e-4);

        ForwardCache cache;
        net.forward(x, cache);
        mat grad_in;
        const mat ones = mat::Ones(3, 6);
        net.backward(cache, ones, nullptr, &grad_in);
        const vec fd_in = central_difference(
            [&](const vec &v) { return net.forward(mat(v.reshaped(4, 6))).sum(); }, x.reshaped(), 1e-6);
        CHECK((vec(grad_in.reshaped()) - fd_in).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("squared error gradient vanishes at the target")
{
    Rng rng(5);
    const Mlp net = Mlp::uniform_init({3, 4, 2}, {Activation::relu, Activation::identity}, rng);
    const mat x = random_mat(3, 5, rng);
    const MlpGradients g = squared_error_gradients(net, x, net.forward(x));
    CHECK(g.max_abs() == 0.0);
    CHECK(squared_error(net, x, net.forward(x)) == 0.0);
}

TEST_CASE("flatten and unflatten round trip")
{
    Rng rng(6);
    Mlp net = Mlp::uniform_init({3, 4, 2}, {Activation::relu, Activation::identity}, rng);
    const vec p = net.flatten();
    Mlp other({3, 4, 2}, {Activation::relu, Activation::identity});
    other.unflatten(p);
    CHECK(other.flatten() == p);
    CHECK_THROWS_AS(other.unflatten(vec::Zero(3)), std::invalid_argument);
}

TEST_CASE("sgd takes plain gradient steps")
{
    Mlp net({1, 1}, {Activation::identity});
    net.layers()[0].weight(0, 0) = 0.5;
    MlpGradients g = net.zeros_like();
    g.weight[0](0, 0) = 2.0;
    g.bias[0](0) = -1.0;
    Optimizer opt(OptimizerKind::sgd, 0.1);
    opt.descend(net, g);
    CHECK(net.layers()[0].weight(0, 0) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(net.layers()[0].bias(0) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("adam first step moves each parameter by the learning rate")
{
    Mlp net({2, 1}, {Activation::identity});
    MlpGradients g = net.zeros_like();
    g.weight[0] << 3.0, -0.01;
    g.bias[0](0) = 0.0;
    Optimizer opt(OptimizerKind::adam, 0.01);
    opt.descend(net, g);
    CHECK(net.layers()[0].weight(0, 0) == doctest::Approx(-0.01).epsilon(1e-6));
    CHECK(net.layers()[0].weight(0, 1) == doctest::Approx(0.01).epsilon(1e-5));
    CHECK(net.layers()[0].bias(0) == 0.0);
}

TEST_CASE("optimizer names")
{
    CHECK(parse_optimizer("sgd") == OptimizerKind::sgd);
    CHECK(parse_optimizer("adam") == OptimizerKind::adam);
    CHECK_THROWS_AS(parse_optimizer("rmsprop"), ConfigError);
    CHECK(parse_activation("relu") == Activation::relu);
    CHECK(std::string(to_string(Activation::tanh)) == "tanh");
}

TEST_CASE("soft update")
{
    Mlp primary({1, 1}, {Activation::identity});
    primary.layers()[0].weight(0, 0) = 1.0;
    primary.layers()[0].bias(0) = 1.0;
    Mlp target({1, 1}, {Activation::identity});

    soft_update(primary, target, 0.001);
    CHECK(target.layers()[0].weight(0, 0) == doctest::Approx(0.001).epsilon(1e-15));

    soft_update(primary, target, 1.0);
    CHECK(target.flatten() == primary.flatten());

    CHECK_THROWS_AS(soft_update(primary, target, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(soft_update(primary, target, 1.5), std::invalid_argument);
}

TEST_CASE("repeated soft updates contract geometrically toward the primary")
{
    Rng rng(7);
    const Mlp primary = Mlp::uniform_init({3, 4, 2}, {Activation::relu, Activation::identity}, rng);
    Mlp target = Mlp::uniform_init({3, 4, 2}, {Activation::relu, Activation::identity}, rng);
    const double eps = 0.1;
    double gap = (primary.flatten() - target.flatten()).cwiseAbs().maxCoeff();
    for (int i = 0; i < 50; ++i)
    {
        soft_update(primary, target, eps);
        const double next = (primary.flatten() - target.flatten()).cwiseAbs().maxCoeff();
        CHECK(next <= (1.0 - eps) * gap * (1.0 + 1e-12));
        gap = next;
    }
}

TEST_CASE("target stays within the convex hull of primary history")
{
    Rng rng(8);
    Mlp primary = Mlp::uniform_init({2, 3, 1}, {Activation::relu, Activation::identity}, rng);
    Mlp target = primary;
    double bound = primary.max_abs();
    for (int i = 0; i < 100; ++i)
    {
        primary.unflatten(primary.flatten() + 0.05 * vec::Random(static_cast<Eigen::Index>(primary.parameter_count())));
        bound = std::max(bound, primary.max_abs());
        soft_update(primary, target, 0.2);
        CHECK(target.max_abs() <= bound + 1e-15);
    }
}
