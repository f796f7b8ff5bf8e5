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
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mmnoma/beamforming.hpp"
#include "mmnoma/channel_model.hpp"
#include "mmnoma/clustering.hpp"
#include "mmnoma/config.hpp"
#include "mmnoma/ee_optimizer.hpp"

namespace mmnoma
{

enum class AccessScheme
{
    noma,
    enoma,
    oma
};

enum class Objective
{
    maxee,
    maxse
};

struct SchemeSpec
{
    AccessScheme scheme = AccessScheme::noma;
    Objective objective = Objective::maxee;

    friend bool operator==(const SchemeSpec &, const SchemeSpec &) = default;
};

std::string_view to_string(AccessScheme scheme);
std::string_view to_string(Objective objective);
std::string to_string(const SchemeSpec &spec); // "noma-maxee"

// Parses "noma-maxee", "enoma-maxse", ... Throws std::invalid_argument.
SchemeSpec parse_scheme(std::string_view text);
std::vector<SchemeSpec> all_schemes();

enum class SweepVariable
{
    max_tx_power_dbm,
    min_rate_bps_hz
};

struct SweepSpec
{
    SweepVariable variable = SweepVariable::max_tx_power_dbm;
    std::vector<double> values;
    int drops = 200;
    std::vector<SchemeSpec> schemes;

    void validate() const;
};

// Copy of `base` with the swept parameter set to `value`.
SystemConfig apply_sweep_value(const SystemConfig &base, SweepVariable variable, double value);

EEParams ee_params(const SystemConfig &config);

// Seed of drop `index`, derived from the master seed by a counter-based
// split, so any drop can be regenerated on its own.
std::uint64_t drop_seed(std::uint64_t master_seed, std::uint64_t index);

// One channel, clustering and beamforming draw shared by every scheme.
struct Realization
{
    std::uint64_t seed = 0; // seed actually used (after resampling)
    int resamples = 0;      // rejected beamforming attempts before this one
    ChannelSet channels;
    ClusterSet clusters;
    BeamformingState beamforming;
};

// Draws a realization from `seed`; a rejected beamforming design moves on to
// the next seed in the stream drop_seed(seed, 1), drop_seed(seed, 2), ...
Realization draw_realization(const SystemConfig &config, std::uint64_t seed, int max_resamples = 100);

InterferenceStructure scheme_structure(AccessScheme scheme, const BeamformingState &bf);

enum class SolveStatus
{
    ok,
    infeasible,
    unconverged, // Dinkelbach cap hit; metrics come from the last iterate
    solver_error
};

std::string_view to_string(SolveStatus status);

struct DropRecord
{
    std::uint64_t seed = 0;
    double sweep_value = 0.0;
    SchemeSpec scheme;
    std::optional<double> ee; // absent unless feasible
    double sum_rate = 0.0;
    double total_power_w = 0.0;
    double min_user_rate = 0.0;
    bool feasible = false;
    SolveStatus status = SolveStatus::infeasible;
    int outer_iterations = 0;
    double wall_time_ms = 0.0;
};

// Solves every requested scheme on one realization. `config` carries the
// swept parameter already applied.
std::vector<DropRecord> run_drop(const Realization &realization, const SystemConfig &config, double sweep_value,
                                 const std::vector<SchemeSpec> &schemes, const OptimizerOptions &options = {});

// Convenience overload drawing the realization from `seed`.
std::vector<DropRecord> run_drop(const SystemConfig &config, std::uint64_t seed, double sweep_value,
                                 const std::vector<SchemeSpec> &schemes, const OptimizerOptions &options = {});

struct SweepRow
{
    double sweep_value = 0.0;
    SchemeSpec scheme;
    std::optional<double> mean_ee;
    std::optional<double> mean_sum_rate;
    std::optional<double> mean_power_w;
    double infeasible_fraction = 0.0;
    int drops_used = 0;
};

struct SweepOutput
{
    std::vector<SweepRow> rows;
    std::vector<DropRecord> records; // ordered by (drop, value, scheme)
    int beamforming_resamples = 0;
};

struct SweepOptions
{
    unsigned threads = 0; // 0: hardware concurrency
    OptimizerOptions optimizer{};
};

// Drop d uses drop_seed(config.rng_seed, d) at every sweep value, so curves
// compare the same channels. Aggregation is keyed by drop index and does not
// depend on thread scheduling.
SweepOutput run_sweep(const SweepSpec &spec, const SystemConfig &config, const SweepOptions &options = {});

// Mean EE over feasible drops; scale multiplies EE (bandwidth_hz for bit/J).
std::vector<SweepRow> aggregate(const SweepSpec &spec, const std::vector<DropRecord> &records, double ee_scale = 1.0);

inline constexpr std::string_view kSweepCsvHeader =
    "sweep_value,scheme,objective,mean_ee,mean_sum_rate,mean_power_w,infeasible_fraction,drops_used";

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);
void write_records_csv(std::ostream &out, const std::vector<DropRecord> &records);

} // namespace mmnoma
