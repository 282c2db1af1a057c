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

#include <fmt/format.h>

#include <algorithm>

namespace irsee
{

const char *to_string(Activation a)
{
    switch (a)
    {
    case Activation::relu:
        return "relu";
    case Activation::tanh:
        return "tanh";
    default:
        return "identity";
    }
}

Activation parse_activation(const std::string &name)
{
    if (name == "identity")
        return Activation::identity;
    if (name == "relu")
        return Activation::relu;
    if (name == "tanh")
        return Activation::tanh;
    throw std::invalid_argument(fmt::format("unknown activation '{}'", name));
}

const char *to_string(OptimizerKind k)
{
    return k == OptimizerKind::adam ? "adam" : "sgd";
}

OptimizerKind parse_optimizer(const std::string &name)
{
    if (name == "sgd")
        return OptimizerKind::sgd;
    if (name == "adam")
        return OptimizerKind::adam;
    throw ConfigError(fmt::format("unknown optimizer '{}' (expected sgd or adam)", name));
}

void MlpGradients::set_zero()
{
    for (auto &w : weight)
        w.setZero();
    for (auto &b : bias)
        b.setZero();
}

bool MlpGradients::all_finite() const
{
    for (const auto &w : weight)
        if (!w.allFinite())
            return false;
    for (const auto &b : bias)
        if (!b.allFinite())
            return false;
    return true;
}

double MlpGradients::max_abs() const
{
    double m = 0.0;
    for (const auto &w : weight)
        if (w.size())
            m = std::max(m, w.cwiseAbs().maxCoeff());
    for (const auto &b : bias)
        if (b.size())
            m = std::max(m, b.cwiseAbs().maxCoeff());
    return m;
}

Mlp::Mlp(const std::vector<int> &sizes, const std::vector<Activation> &activations)
{
    if (sizes.size() < 2 || activations.size() + 1 != sizes.size())
        throw std::invalid_argument("Mlp: need one activation per layer and at least one layer");
    for (size_t l = 0; l + 1 < sizes.size(); ++l)
    {
        if (sizes[l] < 1 || sizes[l + 1] < 1)
            throw std::invalid_argument("Mlp: layer sizes must be positive");
        layers_.push_back({mat::Zero(sizes[l + 1], sizes[l]), vec::Zero(sizes[l + 1]), activations[l]});
    }
}

Mlp Mlp::uniform_init(const std::vector<int> &sizes, const std::vector<Activation> &activations, Rng &rng)
{
    Mlp net(sizes, activations);
    for (auto &layer : net.layers_)
    {
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.weight.cols()));
        std::uniform_real_distribution<double> u(-bound, bound);
        for (Eigen::Index j = 0; j < layer.weight.cols(); ++j)
            for (Eigen::Index i = 0; i < layer.weight.rows(); ++i)
                layer.weight(i, j) = u(rng);
        for (Eigen::Index i = 0; i < layer.bias.size(); ++i)
            layer.bias(i) = u(rng);
    }
    return net;
}

int Mlp::input_dim() const
{
    return layers_.empty() ? 0 : static_cast<int>(layers_.front().weight.cols());
}

int Mlp::output_dim() const
{
    return layers_.empty() ? 0 : static_cast<int>(layers_.back().weight.rows());
}

size_t Mlp::parameter_count() const
{
    size_t n = 0;
    for (const auto &l : layers_)
        n += static_cast<size_t>(l.weight.size() + l.bias.size());
    return n;
}

void Mlp::check_input(Eigen::Index rows) const
{
    if (layers_.empty())
        throw std::invalid_argument("Mlp: network has no layers");
    if (rows != input_dim())
        throw std::invalid_argument(fmt::format("Mlp: input has {} rows, network expects {}", rows, input_dim()));
}

namespace
{

void activate(mat &x, Activation a)
{
    switch (a)
    {
    case Activation::relu:
        x = x.cwiseMax(0.0);
        break;
    case Activation::tanh:
        x = x.array().tanh().matrix();
        break;
    case Activation::identity:
        break;
    }
}

// Multiplies grad in place by the activation derivative, expressed through the activation output.
void activation_backward(mat &grad, const mat &out, Activation a)
{
    switch (a)
    {
    case Activation::relu:
        grad.array() *= (out.array() > 0.0).cast<double>();
        break;
    case Activation::tanh:
        grad.array() *= 1.0 - out.array().square();
        break;
    case Activation::identity:
        break;
    }
}

} // namespace

const mat &Mlp::forward(const mat &input, ForwardCache &cache) const
{
    check_input(input.rows());
    cache.outputs.resize(layers_.size() + 1);
    cache.outputs[0] = input;
    for (size_t l = 0; l < layers_.size(); ++l)
    {
        mat &out = cache.outputs[l + 1];
        out.noalias() = layers_[l].weight * cache.outputs[l];
        out.colwise() += layers_[l].bias;
        activate(out, layers_[l].activation);
    }
    return cache.outputs.back();
}

mat Mlp::forward(const mat &input) const
{
    ForwardCache cache;
    return forward(input, cache);
}

vec Mlp::forward(const vec &input) const
{
    mat in = input;
    return forward(in).col(0);
}

void Mlp::backward(const ForwardCache &cache, const mat &grad_output, MlpGradients *grads, mat *grad_input) const
{
    if (cache.outputs.size() != layers_.size() + 1)
        throw std::invalid_argument("Mlp::backward: cache does not match network");
    if (grads && (grads->weight.size() != layers_.size() || grads->bias.size() != layers_.size()))
        *grads = zeros_like();

    mat delta = grad_output;
    for (size_t li = layers_.size(); li-- > 0;)
    {
        activation_backward(delta, cache.outputs[li + 1], layers_[li].activation);
        if (grads)
        {
            grads->weight[li].noalias() = delta * cache.outputs[li].transpose();
            grads->bias[li] = delta.rowwise().sum();
        }
        if (li > 0 || grad_input)
        {
            mat next = layers_[li].weight.transpose() * delta;
            delta.swap(next);
        }
    }
    if (grad_input)
        *grad_input = std::move(delta);
}

MlpGradients Mlp::zeros_like() const
{
    MlpGradients g;
    for (const auto &l : layers_)
    {
        g.weight.push_back(mat::Zero(l.weight.rows(), l.weight.cols()));
        g.bias.push_back(vec::Zero(l.bias.size()));
    }
    return g;
}

vec Mlp::flatten() const
{
    vec out(static_cast<Eigen::Index>(parameter_count()));
    Eigen::Index at = 0;
    for (const auto &l : layers_)
    {
        out.segment(at, l.weight.size()) = l.weight.reshaped();
        at += l.weight.size();
        out.segment(at, l.bias.size()) = l.bias;
        at += l.bias.size();
    }
    return out;
}

void Mlp::unflatten(const vec &params)
{
    if (static_cast<size_t>(params.size()) != parameter_count())
        throw std::invalid_argument("Mlp::unflatten: parameter count mismatch");
    Eigen::Index at = 0;
    for (auto &l : layers_)
    {
        l.weight.reshaped() = params.segment(at, l.weight.size());
        at += l.weight.size();
        l.bias = params.segment(at, l.bias.size());
        at += l.bias.size();
    }
}

bool Mlp::all_finite() const
{
    for (const auto &l : layers_)
        if (!l.weight.allFinite() || !l.bias.allFinite())
            return false;
    return true;
}

double Mlp::max_abs() const
{
    double m = 0.0;
    for (const auto &l : layers_)
        m = std::max({m, l.weight.cwiseAbs().maxCoeff(), l.bias.cwiseAbs().maxCoeff()});
    return m;
}

MlpGradients squared_error_gradients(const Mlp &net, const mat &inputs, const mat &targets)
{
    ForwardCache cache;
    const mat &y = net.forward(inputs, cache);
    if (targets.rows() != y.rows() || targets.cols() != y.cols())
        throw std::invalid_argument("squared_error_gradients: target shape mismatch");
    mat grad_out = (y - targets) * (2.0 / static_cast<double>(inputs.cols()));
    MlpGradients g = net.zeros_like();
    net.backward(cache, grad_out, &g, nullptr);
    return g;
}

double squared_error(const Mlp &net, const mat &inputs, const mat &targets)
{
    return (targets - net.forward(inputs)).squaredNorm() / static_cast<double>(inputs.cols());
}

Optimizer::Optimizer(OptimizerKind kind, double learning_rate) : kind_(kind), lr_(learning_rate)
{
    if (!(learning_rate > 0.0))
        throw ConfigError(fmt::format("learning rate must be positive, got {}", learning_rate));
}

void Optimizer::descend(Mlp &net, const MlpGradients &grads)
{
    auto &layers = net.layers();
    if (kind_ == OptimizerKind::sgd)
    {
        for (size_t l = 0; l < layers.size(); ++l)
        {
            layers[l].weight -= lr_ * grads.weight[l];
            layers[l].bias -= lr_ * grads.bias[l];
        }
        return;
    }

    constexpr double b1 = 0.9;
    constexpr double b2 = 0.999;
    constexpr double eps = 1e-8;
    if (m_.weight.size() != layers.size())
    {
        m_ = net.zeros_like();
        v_ = net.zeros_like();
        t_ = 0;
    }
    ++t_;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
    const double step = lr_ * std::sqrt(c2) / c1;
    auto update = [&](auto &param, auto &m, auto &v, const auto &g) {
        m = b1 * m + (1.0 - b1) * g;
        v = b2 * v + (1.0 - b2) * g.cwiseAbs2();
        param.array() -= step * m.array() / (v.array().sqrt() + eps);
    };
    for (size_t l = 0; l < layers.size(); ++l)
    {
        update(layers[l].weight, m_.weight[l], v_.weight[l], grads.weight[l]);
        update(layers[l].bias, m_.bias[l], v_.bias[l], grads.bias[l]);
    }
}

void soft_update(const Mlp &primary, Mlp &target, double rate)
{
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument(fmt::format("soft update rate {} outside (0, 1]", rate));
    auto &dst = target.layers();
    const auto &src = primary.layers();
    if (dst.size() != src.size())
        throw std::invalid_argument("soft_update: network shapes differ");
    for (size_t l = 0; l < src.size(); ++l)
    {
        if (dst[l].weight.rows() != src[l].weight.rows() || dst[l].weight.cols() != src[l].weight.cols())
            throw std::invalid_argument("soft_update: network shapes differ");
        dst[l].weight = rate * src[l].weight + (1.0 - rate) * dst[l].weight;
        dst[l].bias = rate * src[l].bias + (1.0 - rate) * dst[l].bias;
    }
}

} // namespace irsee
