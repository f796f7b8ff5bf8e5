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

#include "mmnoma/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mmnoma/kernels.hpp"

namespace mmnoma
{

Eigen::VectorXcd steering_vector(double theta, int n_antennas, double spacing_ratio)
{
    Eigen::VectorXcd a(n_antennas);
    const double phase_step = 2.0 * std::numbers::pi * spacing_ratio * std::sin(theta);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    for (int k = 0; k < n_antennas; ++k)
        a[k] = std::polar(scale, phase_step * k);
    return a;
}

std::vector<double> place_users(Rng &rng, int count, double cell_radius_m, double min_distance_m)
{
    std::vector<double> distances;
    if (count <= 0)
        return distances;
    distances.reserve(count);

    // Inverse CDF of the radius of a point uniform over the annulus.
    const double r0 = min_distance_m * min_distance_m;
    const double r1 = cell_radius_m * cell_radius_m;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < count; ++i)
        distances.push_back(std::sqrt(r0 + unif(rng) * (r1 - r0)));
    return distances;
}

double path_gain_variance(double distance_m, const SystemConfig &config)
{
    return std::pow(10.0, config.pathloss_intercept_db / 10.0) * std::pow(distance_m, -config.pathloss_exponent);
}

Eigen::VectorXcd reconstruct_channel(std::span<const double> angles, std::span<const cplx> gains,
                                     const SystemConfig &config)
{
    if (angles.size() != gains.size())
        throw std::invalid_argument("Path angle and gain counts differ.");

    const int n = config.num_antennas;
    const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(angles.size()));
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(n);
    for (std::size_t f = 0; f < angles.size(); ++f)
    {
        const Eigen::VectorXcd a = steering_vector(angles[f], n, config.antenna_spacing_ratio);
        kernels::axpy(scale * gains[f], as_span(a), {h.data(), static_cast<std::size_t>(n)});
    }
    return h;
}

UserChannel generate_user_channel(Rng &rng, double distance_m, const SystemConfig &config)
{
    if (!(distance_m >= config.min_distance_m))
        throw std::invalid_argument("User distance is below the minimum distance.");

    const int paths = config.num_paths;
    const double variance = path_gain_variance(distance_m, config);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> component(0.0, std::sqrt(variance / 2.0));

    UserChannel user;
    user.distance_m = distance_m;
    user.path_angles.reserve(paths);
    user.path_gains.reserve(paths);
    for (int f = 0; f < paths; ++f)
    {
        user.path_angles.push_back(angle(rng));
        const double re = component(rng);
        const double im = component(rng);
        user.path_gains.emplace_back(re, im);
    }
    user.vector = reconstruct_channel(user.path_angles, user.path_gains, config);
    return user;
}

double noise_power(double bandwidth_hz, double noise_density_dbm_per_hz)
{
    return dbm_to_watts(noise_density_dbm_per_hz + 10.0 * std::log10(bandwidth_hz));
}

ChannelSet generate_channel_set(Rng &rng, const SystemConfig &config)
{
    ChannelSet set;
    set.noise_power_w = noise_power(config.bandwidth_hz, config.noise_density_dbm_per_hz);
    const auto distances = place_users(rng, config.pool_size(), config.cell_radius_m, config.min_distance_m);
    set.users.reserve(distances.size());
    for (double d : distances)
        set.users.push_back(generate_user_channel(rng, d, config));
    return set;
}

} // namespace mmnoma
