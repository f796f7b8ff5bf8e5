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

// Monte Carlo sweeps of uplink mmWave NOMA power allocation.
//
//   mmnoma_sim sweep-power --drops 200 --output power.csv
//   mmnoma_sim sweep-rate --config table1.json --schemes noma-maxee,oma-maxee
//   mmnoma_sim show-config

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmnoma/config.hpp"
#include "mmnoma/kernels.hpp"
#include "mmnoma/sim_harness.hpp"

namespace
{

std::vector<double> linspace_inclusive(double first, double last, double step)
{
    std::vector<double> v;
    const int n = static_cast<int>(std::floor((last - first) / step + 1e-9)) + 1;
    for (int k = 0; k < n; ++k)
        v.push_back(first + k * step);
    return v;
}

struct SweepArgs
{
    std::string config_path;
    std::string output_path;
    std::string records_path;
    int drops = 200;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> schemes;
    std::vector<double> values;
    unsigned threads = 0;
    bool bits_per_joule = false;
    std::optional<double> max_power_dbm;
    std::optional<double> min_rate;
};

void add_sweep_options(CLI::App *cmd, SweepArgs &args)
{
    cmd->add_option("-c,--config", args.config_path, "Flat JSON configuration file")->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", args.output_path, "Aggregated CSV output (default: stdout)");
    cmd->add_option("--records", args.records_path, "Optional per-drop CSV output");
    cmd->add_option("-n,--drops", args.drops, "Monte Carlo drops per sweep value")->check(CLI::PositiveNumber);
    cmd->add_option("-s,--seed", args.seed, "Master seed (overrides rng_seed from the config)");
    cmd->add_option("--schemes", args.schemes, "Schemes as {noma,enoma,oma}-{maxee,maxse} (default: all six)")
        ->delimiter(',');
    cmd->add_option("--values", args.values, "Sweep values (default: the standard axis)")->delimiter(',');
    cmd->add_option("-j,--threads", args.threads, "Worker threads (0: all cores)");
    cmd->add_flag("--bits-per-joule", args.bits_per_joule, "Report EE in bit/J instead of bit/s/Hz/W");
}

void add_fixed_power_option(CLI::App *cmd, SweepArgs &args)
{
    cmd->add_option("--max-power-dbm", args.max_power_dbm, "Per-user maximum transmit power held fixed (default 0 dBm)");
}

void add_fixed_rate_option(CLI::App *cmd, SweepArgs &args)
{
    cmd->add_option("--min-rate", args.min_rate, "Per-user minimum rate held fixed (default from config)");
}

int run(mmnoma::SweepVariable variable, const SweepArgs &args)
{
    mmnoma::SystemConfig config = args.config_path.empty() ? mmnoma::SystemConfig{} : mmnoma::load_config(args.config_path);
    if (args.seed)
        config.rng_seed = *args.seed;
    if (args.max_power_dbm)
        config.max_tx_power_w = mmnoma::dbm_to_watts(*args.max_power_dbm);
    if (args.min_rate)
        config.min_rate_bps_hz = *args.min_rate;
    config.validate();

    mmnoma::SweepSpec spec;
    spec.variable = variable;
    spec.drops = args.drops;
    if (!args.values.empty())
        spec.values = args.values;
    else if (variable == mmnoma::SweepVariable::max_tx_power_dbm)
        spec.values = linspace_inclusive(-10.0, 10.0, 1.0);
    else
        spec.values = linspace_inclusive(0.1, 0.4, 0.05);
    if (args.schemes.empty())
        spec.schemes = mmnoma::all_schemes();
    else
        for (const auto &s : args.schemes)
            spec.schemes.push_back(mmnoma::parse_scheme(s));

    mmnoma::SweepOptions options;
    options.threads = args.threads;
    const mmnoma::SweepOutput out = mmnoma::run_sweep(spec, config, options);
    const double scale = args.bits_per_joule ? config.bandwidth_hz : 1.0;
    const auto rows = mmnoma::aggregate(spec, out.records, scale);

    if (args.output_path.empty())
        mmnoma::write_sweep_csv(std::cout, rows);
    else
    {
        std::ofstream f(args.output_path);
        if (!f)
            throw std::runtime_error("Cannot write '" + args.output_path + "'.");
        mmnoma::write_sweep_csv(f, rows);
    }
    if (!args.records_path.empty())
    {
        std::ofstream f(args.records_path);
        if (!f)
            throw std::runtime_error("Cannot write '" + args.records_path + "'.");
        mmnoma::write_records_csv(f, out.records);
    }
    std::cerr << "drops: " << spec.drops << ", beamforming resamples: " << out.beamforming_resamples
              << ", kernels: " << mmnoma::kernels::isa_name(mmnoma::kernels::active().isa) << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Uplink mmWave massive-MIMO NOMA energy-efficiency simulator"};
    app.require_subcommand(1);

    SweepArgs power_args;
    auto *power = app.add_subcommand("sweep-power", "Sweep the per-user maximum transmit power (dBm)");
    add_sweep_options(power, power_args);
    add_fixed_rate_option(power, power_args);

    SweepArgs rate_args;
    auto *rate = app.add_subcommand("sweep-rate", "Sweep the per-user minimum rate (bit/s/Hz)");
    add_sweep_options(rate, rate_args);
    add_fixed_power_option(rate, rate_args);

    std::string show_path;
    auto *show = app.add_subcommand("show-config", "Print the effective configuration as JSON");
    show->add_option("-c,--config", show_path, "Flat JSON configuration file")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*power)
            return run(mmnoma::SweepVariable::max_tx_power_dbm, power_args);
        if (*rate)
        {
            if (!rate_args.max_power_dbm)
                rate_args.max_power_dbm = 0.0;
            return run(mmnoma::SweepVariable::min_rate_bps_hz, rate_args);
        }
        if (*show)
        {
            const auto config = show_path.empty() ? mmnoma::SystemConfig{} : mmnoma::load_config(show_path);
            std::cout << mmnoma::config_to_json(config).dump(2) << '\n';
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
