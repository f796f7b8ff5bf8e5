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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace mmnoma
{

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Scenario parameters. Defaults reproduce the reference setup: 100-antenna
// ULA at the BS, 8 RF chains, 50 MHz at -174 dBm/Hz, path-loss exponent 4.3,
// 300 m cell, 10 dBm per-user power cap, R_min = 0.1 bit/s/Hz and a power
// amplifier efficiency of 38 %. The pool of 3 users per cluster and the
// +30 dB path gain at 1 m put the 0 dBm / R_min = 0.3 operating point where
// OMA loses feasibility first; with a pool of exactly 2L and no intercept
// almost every drop is infeasible.
struct SystemConfig
{
    int num_antennas = 100;
    int num_rf_chains = 8; // also the number of two-user clusters
    int num_paths = 3;
    double antenna_spacing_ratio = 0.5; // d / lambda
    double bandwidth_hz = 50e6;
    double noise_density_dbm_per_hz = -174.0;
    double pathloss_exponent = 4.3;
    double pathloss_intercept_db = 30.0; // path gain at 1 m
    double cell_radius_m = 300.0;
    double min_distance_m = 1.0;
    double amplifier_inefficiency = 1.0 / 0.38;
    // Fixed circuit power P_C. When unset it is charged as the per-user fixed
    // power times the 2L scheduled users.
    std::optional<double> circuit_power_w;
    double fixed_power_per_user_w = 0.01;
    double max_tx_power_w = 0.01;
    double min_rate_bps_hz = 0.1;
    std::uint64_t rng_seed = 1;

    // Users generated per drop; 0 selects 3 * num_rf_chains.
    int user_pool_size = 0;
    // Clustering correlation uses h_i^H h_j when true, h_i^T h_j otherwise.
    bool conjugate_correlation = true;

    int num_clusters() const { return num_rf_chains; }
    int pool_size() const { return user_pool_size > 0 ? user_pool_size : 3 * num_rf_chains; }
    double circuit_power() const { return circuit_power_w.value_or(2.0 * num_rf_chains * fixed_power_per_user_w); }

    // Throws std::invalid_argument naming the first violated invariant.
    void validate() const;
};

// Flat JSON object whose keys are SystemConfig field names. Power fields also
// accept a *_dbm spelling (max_tx_power_dbm, circuit_power_dbm,
// fixed_power_per_user_dbm), converted on
// load. Unknown keys are rejected. Missing keys keep their defaults.
SystemConfig config_from_json(const nlohmann::json &j, SystemConfig base = {});
SystemConfig load_config(const std::filesystem::path &path);
nlohmann::json config_to_json(const SystemConfig &config);

} // namespace mmnoma
