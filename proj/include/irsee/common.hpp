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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace irsee
{

using cplx = std::complex<double>;
using vec = Eigen::VectorXd;
using mat = Eigen::MatrixXd;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

// All randomness flows through explicitly passed engines of this type.
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Raised for malformed or inconsistent configuration values.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Raised when an API is driven out of order (e.g. step before reset).
class UsageError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

// Raised when training produces non-finite rewards or parameters.
class DivergenceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

inline double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

// Circularly symmetric complex Gaussian with unit variance.
inline cplx sample_cn(Rng &rng)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    double re = n(rng);
    double im = n(rng);
    return {re, im};
}

// Derives an independent engine for a sub-task from a parent seed.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

} // namespace irsee
