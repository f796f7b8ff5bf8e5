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

#include "mmnoma/config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace mmnoma
{

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

void SystemConfig::validate() const
{
    if (num_antennas < 1)
        throw std::invalid_argument("num_antennas must be positive.");
    if (num_rf_chains < 1)
        throw std::invalid_argument("num_rf_chains must be positive.");
    if (num_rf_chains > num_antennas)
        throw std::invalid_argument("num_rf_chains cannot exceed num_antennas.");
    if (num_paths < 1)
        throw std::invalid_argument("num_paths must be positive.");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth_hz must be positive.");
    if (!(pathloss_exponent > 0.0))
        throw std::invalid_argument("pathloss_exponent must be positive.");
    if (!(cell_radius_m > 0.0))
        throw std::invalid_argument("cell_radius_m must be positive.");
    if (!(min_distance_m > 0.0) || !(min_distance_m < cell_radius_m))
        throw std::invalid_argument("min_distance_m must lie in (0, cell_radius_m).");
    if (!(amplifier_inefficiency >= 1.0))
        throw std::invalid_argument("amplifier_inefficiency must be at least 1.");
    if (!(circuit_power() >= 0.0))
        throw std::invalid_argument("circuit power cannot be negative.");
    if (!(max_tx_power_w > 0.0))
        throw std::invalid_argument("max_tx_power_w must be positive.");
    if (!(min_rate_bps_hz >= 0.0))
        throw std::invalid_argument("min_rate_bps_hz cannot be negative.");
    if (pool_size() < 2 * num_rf_chains)
        throw std::invalid_argument("user_pool_size must be at least 2 * num_rf_chains.");
}

SystemConfig config_from_json(const nlohmann::json &j, SystemConfig c)
{
    if (!j.is_object())
        throw std::invalid_argument("Configuration must be a flat JSON object.");

    for (const auto &[key, value] : j.items())
    {
        if (key == "num_antennas")
            c.num_antennas = value.get<int>();
        else if (key == "num_rf_chains")
            c.num_rf_chains = value.get<int>();
        else if (key == "num_paths")
            c.num_paths = value.get<int>();
        else if (key == "antenna_spacing_ratio")
            c.antenna_spacing_ratio = value.get<double>();
        else if (key == "bandwidth_hz")
            c.bandwidth_hz = value.get<double>();
        else if (key == "noise_density_dbm_per_hz")
            c.noise_density_dbm_per_hz = value.get<double>();
        else if (key == "pathloss_exponent")
            c.pathloss_exponent = value.get<double>();
        else if (key == "pathloss_intercept_db")
            c.pathloss_intercept_db = value.get<double>();
        else if (key == "cell_radius_m")
            c.cell_radius_m = value.get<double>();
        else if (key == "min_distance_m")
            c.min_distance_m = value.get<double>();
        else if (key == "amplifier_inefficiency")
            c.amplifier_inefficiency = value.get<double>();
        else if (key == "circuit_power_w")
            c.circuit_power_w = value.get<double>();
        else if (key == "circuit_power_dbm")
            c.circuit_power_w = dbm_to_watts(value.get<double>());
        else if (key == "fixed_power_per_user_w")
            c.fixed_power_per_user_w = value.get<double>();
        else if (key == "fixed_power_per_user_dbm")
            c.fixed_power_per_user_w = dbm_to_watts(value.get<double>());
        else if (key == "max_tx_power_w")
            c.max_tx_power_w = value.get<double>();
        else if (key == "max_tx_power_dbm")
            c.max_tx_power_w = dbm_to_watts(value.get<double>());
        else if (key == "min_rate_bps_hz")
            c.min_rate_bps_hz = value.get<double>();
        else if (key == "rng_seed")
            c.rng_seed = value.get<std::uint64_t>();
        else if (key == "user_pool_size")
            c.user_pool_size = value.get<int>();
        else if (key == "conjugate_correlation")
            c.conjugate_correlation = value.get<bool>();
        else
            throw std::invalid_argument("Unknown configuration key '" + key + "'.");
    }

    c.validate();
    return c;
}

SystemConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("Cannot open configuration file '" + path.string() + "'.");
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(in, nullptr, true, true);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw std::runtime_error("Malformed configuration file '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

nlohmann::json config_to_json(const SystemConfig &c)
{
    return {
        {"num_antennas", c.num_antennas},
        {"num_rf_chains", c.num_rf_chains},
        {"num_paths", c.num_paths},
        {"antenna_spacing_ratio", c.antenna_spacing_ratio},
        {"bandwidth_hz", c.bandwidth_hz},
        {"noise_density_dbm_per_hz", c.noise_density_dbm_per_hz},
        {"pathloss_exponent", c.pathloss_exponent},
        {"pathloss_intercept_db", c.pathloss_intercept_db},
        {"cell_radius_m", c.cell_radius_m},
        {"min_distance_m", c.min_distance_m},
        {"amplifier_inefficiency", c.amplifier_inefficiency},
        {"circuit_power_w", c.circuit_power()},
        {"fixed_power_per_user_w", c.fixed_power_per_user_w},
        {"max_tx_power_w", c.max_tx_power_w},
        {"min_rate_bps_hz", c.min_rate_bps_hz},
        {"rng_seed", c.rng_seed},
        {"user_pool_size", c.user_pool_size},
        {"conjugate_correlation", c.conjugate_correlation},
    };
}

} // namespace mmnoma
