// mmnoma: uplink mmWave massive-MIMO NOMA simulation and power allocation
// Copyright (C) 2026 The mmnoma Authors
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

#include <complex>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mmnoma/config.hpp"

namespace mmnoma
{

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

// Narrowband geometric multipath channel of one single-antenna user, seen at
// the BS array. The vector is the sum of the stored paths.
struct UserChannel
{
    Eigen::VectorXcd vector;
    double distance_m = 0.0;
    std::vector<double> path_angles; // azimuth AoA per path, [0, 2*pi)
    std::vector<cplx> path_gains;
};

struct ChannelSet
{
    std::vector<UserChannel> users;
    double noise_power_w = 0.0;
};

inline std::span<const cplx> as_span(const Eigen::VectorXcd &v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// ULA response a(theta): entry k is exp(j 2 pi ratio k sin(theta)) / sqrt(n).
Eigen::VectorXcd steering_vector(double theta, int n_antennas, double spacing_ratio);

// User distances, uniform over the annulus [min_distance_m, cell_radius_m].
std::vector<double> place_users(Rng &rng, int count, double cell_radius_m, double min_distance_m);

// Per-path gain variance sigma_f at the given distance (identical for every path).
double path_gain_variance(double distance_m, const SystemConfig &config);

// sqrt(N/F) * sum_f gain_f * a(angle_f).
Eigen::VectorXcd reconstruct_channel(std::span<const double> angles, std::span<const cplx> gains,
                                     const SystemConfig &config);

// Throws std::invalid_argument when distance_m < config.min_distance_m.
UserChannel generate_user_channel(Rng &rng, double distance_m, const SystemConfig &config);

// Thermal noise power in watts over the given bandwidth.
double noise_power(double bandwidth_hz, double noise_density_dbm_per_hz);

// Places config.pool_size() users and draws their channels.
ChannelSet generate_channel_set(Rng &rng, const SystemConfig &config);

} // namespace mmnoma
