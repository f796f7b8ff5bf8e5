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

#include "mmnoma/sim_harness.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mmnoma/enhanced_noma.hpp"
#include "mmnoma/oma_baseline.hpp"

namespace mmnoma
{

std::string_view to_string(AccessScheme scheme)
{
    switch (scheme)
    {
    case AccessScheme::noma:
        return "noma";
    case AccessScheme::enoma:
        return "enoma";
    case AccessScheme::oma:
        return "oma";
    }
    return "?";
}

std::string_view to_string(Objective objective) { return objective == Objective::maxee ? "maxee" : "maxse"; }

std::string to_string(const SchemeSpec &spec)
{
    return std::string(to_string(spec.scheme)) + "-" + std::string(to_string(spec.objective));
}

SchemeSpec parse_scheme(std::string_view text)
{
    for (const auto &s : all_schemes())
        if (to_string(s) == text)
            return s;
    throw std::invalid_argument("Unknown scheme '" + std::string(text) +
                                "' (expected {noma,enoma,oma}-{maxee,maxse}).");
}

std::vector<SchemeSpec> all_schemes()
{
    std::vector<SchemeSpec> out;
    for (auto scheme : {AccessScheme::noma, AccessScheme::enoma, AccessScheme::oma})
        for (auto objective : {Objective::maxee, Objective::maxse})
            out.push_back({scheme, objective});
    return out;
}

std::string_view to_string(SolveStatus status)
{
    switch (status)
    {
    case SolveStatus::ok:
        return "ok";
    case SolveStatus::infeasible:
        return "infeasible";
    case SolveStatus::unconverged:
        return "unconverged";
    case SolveStatus::solver_error:
        return "solver_error";
    }
    return "?";
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw std::invalid_argument("Sweep needs at least one value.");
    if (schemes.empty())
        throw std::invalid_argument("Sweep needs at least one scheme.");
    if (drops < 1)
        throw std::invalid_argument("Sweep needs at least one drop.");
}

SystemConfig apply_sweep_value(const SystemConfig &base, SweepVariable variable, double value)
{
    SystemConfig c = base;
    if (variable == SweepVariable::max_tx_power_dbm)
        c.max_tx_power_w = dbm_to_watts(value);
    else
        c.min_rate_bps_hz = value;
    c.validate();
    return c;
}

EEParams ee_params(const SystemConfig &config)
{
    return {config.amplifier_inefficiency, config.circuit_power(), config.max_tx_power_w, config.min_rate_bps_hz};
}

std::uint64_t drop_seed(std::uint64_t master_seed, std::uint64_t index)
{
    // splitmix64 finalizer over (master, counter)
    std::uint64_t z = master_seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Realization draw_realization(const SystemConfig &config, std::uint64_t seed, int max_resamples)
{
    for (int attempt = 0; attempt <= max_resamples; ++attempt)
    {
        const std::uint64_t s = attempt == 0 ? seed : drop_seed(seed, static_cast<std::uint64_t>(attempt));
        Rng rng(s);
        Realization r;
        r.seed = s;
        r.resamples = attempt;
        r.channels = generate_channel_set(rng, config);
        r.clusters = pair_users(r.channels.users, config.num_clusters(), config.conjugate_correlation);
        try
        {
            r.beamforming = design_hybrid_beamforming(r.channels, r.clusters, config);
            return r;
        }
        catch (const BeamformingRejected &)
        {
        }
    }
    throw BeamformingRejected("No acceptable beamforming design within the resample budget.");
}

InterferenceStructure scheme_structure(AccessScheme scheme, const BeamformingState &bf)
{
    switch (scheme)
    {
    case AccessScheme::enoma:
        return enhanced_structure(bf.rho, bf.alpha);
    case AccessScheme::oma:
        return oma_structure(bf.rho, bf.alpha);
    case AccessScheme::noma:
        break;
    }
    return noma_structure(bf.rho, bf.alpha);
}

std::vector<DropRecord> run_drop(const Realization &realization, const SystemConfig &config, double sweep_value,
                                 const std::vector<SchemeSpec> &schemes, const OptimizerOptions &options)
{
    const EEParams params = ee_params(config);
    std::vector<DropRecord> records;
    records.reserve(schemes.size());
    for (const auto &spec : schemes)
    {
        DropRecord rec;
        rec.seed = realization.seed;
        rec.sweep_value = sweep_value;
        rec.scheme = spec;

        const auto t0 = std::chrono::steady_clock::now();
        const InterferenceStructure s = scheme_structure(spec.scheme, realization.beamforming);
        std::optional<EEResult> result;
        try
        {
            result = spec.objective == Objective::maxee ? dinkelbach_solve(s, params, options)
                                                        : max_se_solve(s, params, options);
            rec.status = result->feasible ? SolveStatus::ok : SolveStatus::infeasible;
        }
        catch (const DinkelbachError &e)
        {
            result = e.partial;
            rec.status = SolveStatus::unconverged;
        }
        catch (const SolverError &)
        {
            rec.status = SolveStatus::solver_error;
        }
        rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

        if (result && result->feasible)
        {
            rec.feasible = true;
            rec.ee = result->ee;
            rec.sum_rate = result->sum_rate();
            rec.total_power_w = result->total_power();
            rec.min_user_rate = result->rates.minCoeff();
            rec.outer_iterations = static_cast<int>(result->outer_trace.size());
        }
        records.push_back(rec);
    }
    return records;
}

std::vector<DropRecord> run_drop(const SystemConfig &config, std::uint64_t seed, double sweep_value,
                                 const std::vector<SchemeSpec> &schemes, const OptimizerOptions &options)
{
    return run_drop(draw_realization(config, seed), config, sweep_value, schemes, options);
}

SweepOutput run_sweep(const SweepSpec &spec, const SystemConfig &config, const SweepOptions &options)
{
    spec.validate();
    config.validate();

    std::vector<SystemConfig> configs;
    for (double v : spec.values)
        configs.push_back(apply_sweep_value(config, spec.variable, v));

    const std::size_t per_drop = spec.values.size() * spec.schemes.size();
    std::vector<std::vector<DropRecord>> by_drop(static_cast<std::size_t>(spec.drops));
    std::vector<int> resamples(static_cast<std::size_t>(spec.drops), 0);

    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (int d = next++; d < spec.drops; d = next++)
        {
            try
            {
                const Realization r = draw_realization(config, drop_seed(config.rng_seed, static_cast<std::uint64_t>(d)));
                resamples[d] = r.resamples;
                auto &out = by_drop[d];
                out.reserve(per_drop);
                for (std::size_t v = 0; v < spec.values.size(); ++v)
                {
                    auto recs = run_drop(r, configs[v], spec.values[v], spec.schemes, options.optimizer);
                    out.insert(out.end(), recs.begin(), recs.end());
                }
            }
            catch (...)
            {
                const std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.drops));
    if (threads <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);

    SweepOutput out;
    for (int d = 0; d < spec.drops; ++d)
    {
        out.records.insert(out.records.end(), by_drop[d].begin(), by_drop[d].end());
        out.beamforming_resamples += resamples[d];
    }
    out.rows = aggregate(spec, out.records);
    return out;
}

std::vector<SweepRow> aggregate(const SweepSpec &spec, const std::vector<DropRecord> &records, double ee_scale)
{
    std::vector<SweepRow> rows;
    for (double value : spec.values)
    {
        for (const auto &scheme : spec.schemes)
        {
            SweepRow row;
            row.sweep_value = value;
            row.scheme = scheme;
            double ee = 0.0, rate = 0.0, power = 0.0;
            int total = 0, infeasible = 0;
            for (const auto &rec : records)
            {
                if (rec.sweep_value != value || rec.scheme != scheme)
                    continue;
                ++total;
                if (rec.status == SolveStatus::infeasible)
                    ++infeasible;
                if (!rec.feasible)
                    continue;
                ++row.drops_used;
                ee += *rec.ee;
                rate += rec.sum_rate;
                power += rec.total_power_w;
            }
            row.infeasible_fraction = total > 0 ? static_cast<double>(infeasible) / total : 0.0;
            if (row.drops_used > 0)
            {
                row.mean_ee = ee_scale * ee / row.drops_used;
                row.mean_sum_rate = rate / row.drops_used;
                row.mean_power_w = power / row.drops_used;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

namespace
{

void put_optional(std::ostream &out, const std::optional<double> &v)
{
    if (v)
        out << *v;
}

} // namespace

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows)
{
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(10);
    out << kSweepCsvHeader << '\n';
    for (const auto &r : rows)
    {
        out << r.sweep_value << ',' << to_string(r.scheme.scheme) << ',' << to_string(r.scheme.objective) << ',';
        put_optional(out, r.mean_ee);
        out << ',';
        put_optional(out, r.mean_sum_rate);
        out << ',';
        put_optional(out, r.mean_power_w);
        out << ',' << r.infeasible_fraction << ',' << r.drops_used << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

void write_records_csv(std::ostream &out, const std::vector<DropRecord> &records)
{
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(10);
    out << "seed,sweep_value,scheme,objective,ee,sum_rate,total_power_w,min_user_rate,feasible,status,"
           "outer_iterations,wall_time_ms\n";
    for (const auto &r : records)
    {
        out << r.seed << ',' << r.sweep_value << ',' << to_string(r.scheme.scheme) << ','
            << to_string(r.scheme.objective) << ',';
        put_optional(out, r.ee);
        out << ',' << r.sum_rate << ',' << r.total_power_w << ',' << r.min_user_rate << ',' << (r.feasible ? 1 : 0)
            << ',' << to_string(r.status) << ',' << r.outer_iterations << ',' << r.wall_time_ms << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

} // namespace mmnoma
