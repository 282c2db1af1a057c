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

#include <string>
#include <vector>

namespace irsee
{

enum class Activation
{
    identity,
    relu,
    tanh
};

const char *to_string(Activation a);
Activation parse_activation(const std::string &name);

struct DenseLayer
{
    mat weight;   // fan_out x fan_in
    vec bias;
    Activation activation = Activation::identity;
};

// Parameter-shaped container, also used for optimizer state.
struct MlpGradients
{
    std::vector<mat> weight;
    std::vector<vec> bias;

    void set_zero();
    bool all_finite() const;
    double max_abs() const;
};

// Activations kept from a forward pass; outputs[0] is the input batch and
// outputs[l + 1] the post-activation output of layer l.
struct ForwardCache
{
    std::vector<mat> outputs;
};

// Fully connected network operating on batches stored as columns.
class Mlp
{
  public:
    Mlp() = default;

    // Zero weights and biases. sizes has one more entry than activations.
    Mlp(const std::vector<int> &sizes, const std::vector<Activation> &activations);

    // Weights and biases uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
    static Mlp uniform_init(const std::vector<int> &sizes, const std::vector<Activation> &activations, Rng &rng);

    int input_dim() const;
    int output_dim() const;
    size_t parameter_count() const;

    std::vector<DenseLayer> &layers() { return layers_; }
    const std::vector<DenseLayer> &layers() const { return layers_; }

    vec forward(const vec &input) const;
    mat forward(const mat &input) const;
    const mat &forward(const mat &input, ForwardCache &cache) const;

    // Backpropagates dL/d(output) through the cached pass. Either output may be null.
    void backward(const ForwardCache &cache, const mat &grad_output, MlpGradients *grads, mat *grad_input) const;

    MlpGradients zeros_like() const;

    vec flatten() const;
    void unflatten(const vec &params);

    bool all_finite() const;
    double max_abs() const;

  private:
    void check_input(Eigen::Index rows) const;

    std::vector<DenseLayer> layers_;
};

// Gradients of mean_i sum_j (target_ij - net(x_i)_j)^2 over the batch columns.
MlpGradients squared_error_gradients(const Mlp &net, const mat &inputs, const mat &targets);
double squared_error(const Mlp &net, const mat &inputs, const mat &targets);

enum class OptimizerKind
{
    sgd,
    adam
};

const char *to_string(OptimizerKind k);
OptimizerKind parse_optimizer(const std::string &name);

// Applies descent steps theta <- theta - lr * step(grad).
class Optimizer
{
  public:
    Optimizer() = default;
    Optimizer(OptimizerKind kind, double learning_rate);

    void descend(Mlp &net, const MlpGradients &grads);

    OptimizerKind kind() const { return kind_; }
    double learning_rate() const { return lr_; }

  private:
    OptimizerKind kind_ = OptimizerKind::sgd;
    double lr_ = 1e-3;
    long t_ = 0;
    MlpGradients m_;
    MlpGradients v_;
};

// target <- eps * primary + (1 - eps) * target, elementwise.
void soft_update(const Mlp &primary, Mlp &target, double rate);

} // namespace irsee
