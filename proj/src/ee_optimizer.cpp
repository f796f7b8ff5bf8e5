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

#include "mmnoma/ee_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mmnoma
{
namespace
{

Eigen::Map<const Eigen::VectorXd> flat(const PowerMatrix &p) { return {p.data(), p.size()}; }

PowerMatrix unflat(const Eigen::VectorXd &x)
{
    const Eigen::Index n = x.size() / 2;
    return Eigen::Map<const PowerMatrix>(x.data(), n, 2);
}

// Affine received-power forms over the flattened power vector.
struct RateForms
{
    std::vector<AffineRow> strong_num, strong_den, weak_num, weak_den;
};

RateForms rate_forms(const InterferenceStructure &s)
{
    const Eigen::Index n = s.clusters();
    RateForms f;
    for (Eigen::Index l = 0; l < n; ++l)
    {
        AffineRow weak_den{Eigen::VectorXd::Zero(2 * n), 1.0};
        for (Eigen::Index j = 0; j < n; ++j)
            if (s.mask(j, l))
                weak_den.coeffs(n + j) = s.alpha(j, l);

        AffineRow weak_num = weak_den;
        weak_num.coeffs(n + l) += s.alpha(l, l);

        AffineRow strong_den = s.shared_slot ? weak_num : AffineRow{Eigen::VectorXd::Zero(2 * n), 1.0};
        AffineRow strong_num = strong_den;
        strong_num.coeffs(l) += s.rho(l);

        f.strong_num.push_back(std::move(strong_num));
        f.strong_den.push_back(std::move(strong_den));
        f.weak_num.push_back(std::move(weak_num));
        f.weak_den.push_back(std::move(weak_den));
    }
    return f;
}

double qos_factor(const InterferenceStructure &s, double min_rate) { return std::exp2(min_rate / s.slot_scale) - 1.0; }

// f1 log terms; the power cost is added by the caller.
std::vector<LogTerm> f1_log_terms(const InterferenceStructure &s)
{
    const RateForms f = rate_forms(s);
    std::vector<LogTerm> terms;
    for (Eigen::Index l = 0; l < s.clusters(); ++l)
    {
        terms.push_back({f.strong_num[l], s.slot_scale});
        if (!s.shared_slot)
            terms.push_back({f.weak_num[l], s.slot_scale});
    }
    return terms;
}

EEResult empty_result(Eigen::Index n)
{
    EEResult r;
    r.powers = PowerMatrix::Zero(n, 2);
    r.rates = RateMatrix::Zero(n, 2);
    return r;
}

void finish(EEResult &r, const InterferenceStructure &s, const EEParams &params)
{
    r.rates = compute_rates(r.powers, s);
    r.ee = r.rates.sum() / consumed_power(r.powers, s, params);
    r.feasible = true;
}

} // namespace

void InterferenceStructure::validate() const
{
    const Eigen::Index n = clusters();
    if (n < 1)
        throw std::invalid_argument("Interference structure has no clusters.");
    if (alpha.rows() != n || alpha.cols() != n || mask.rows() != n || mask.cols() != n)
        throw std::invalid_argument("Interference structure dimensions are inconsistent.");
    if ((rho.array() < 0.0).any() || (alpha.array() < 0.0).any())
        throw std::invalid_argument("Gains must be nonnegative.");
    for (Eigen::Index l = 0; l < n; ++l)
        if (mask(l, l))
            throw std::invalid_argument("A weak user cannot interfere with its own cluster through the mask.");
    if (!(slot_scale > 0.0 && slot_scale <= 1.0))
        throw std::invalid_argument("slot_scale must lie in (0, 1].");
}

InterferenceStructure noma_structure(const Eigen::VectorXd &rho, const Eigen::MatrixXd &alpha)
{
    const Eigen::Index n = rho.size();
    InterferenceStructure s{rho, alpha, MaskMatrix::Constant(n, n, true), true, 1.0};
    s.mask.diagonal().setConstant(false);
    return s;
}

RateMatrix compute_rates(const PowerMatrix &p, const InterferenceStructure &s)
{
    const Eigen::Index n = s.clusters();
    RateMatrix r(n, 2);
    for (Eigen::Index l = 0; l < n; ++l)
    {
        double inter = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (s.mask(j, l))
                inter += s.alpha(j, l) * p(j, 1);

        const double intra = s.alpha(l, l) * p(l, 1);
        const double strong_interference = s.shared_slot ? intra + inter : 0.0;
        r(l, 0) = s.slot_scale * std::log2(1.0 + s.rho(l) * p(l, 0) / (strong_interference + 1.0));
        r(l, 1) = s.slot_scale * std::log2(1.0 + intra / (inter + 1.0));
    }
    return r;
}

Eigen::VectorXd cluster_sum_rates(const PowerMatrix &p, const InterferenceStructure &s)
{
    const Eigen::Index n = s.clusters();
    const Eigen::VectorXd weak_powers = p.col(1);
    Eigen::VectorXd out(n);
    for (Eigen::Index l = 0; l < n; ++l)
    {
        const Eigen::VectorXd masked = s.alpha.col(l).cwiseProduct(s.mask.col(l).cast<double>());
        const double residual = masked.dot(weak_powers) + 1.0;
        const double received = residual + s.alpha(l, l) * p(l, 1);
        if (s.shared_slot)
            out(l) = s.slot_scale * std::log2((s.rho(l) * p(l, 0) + received) / residual);
        else
            out(l) = s.slot_scale * (std::log2(s.rho(l) * p(l, 0) + 1.0) + std::log2(received / residual));
    }
    return out;
}

double consumed_power(const PowerMatrix &p, const InterferenceStructure &s, const EEParams &params)
{
    return params.amplifier_inefficiency * s.slot_scale * p.sum() + params.circuit_power_w;
}

double energy_efficiency(const PowerMatrix &p, const InterferenceStructure &s, const EEParams &params)
{
    return compute_rates(p, s).sum() / consumed_power(p, s, params);
}

std::vector<AffineRow> qos_rows(const InterferenceStructure &s, double min_rate_bps_hz)
{
    const double gamma = qos_factor(s, min_rate_bps_hz);
    const RateForms f = rate_forms(s);
    std::vector<AffineRow> rows;
    rows.reserve(2 * f.strong_num.size());
    for (std::size_t l = 0; l < f.strong_num.size(); ++l)
    {
        // signal = numerator - denominator
        auto row = [gamma](const AffineRow &num, const AffineRow &den) {
            return AffineRow{num.coeffs - (1.0 + gamma) * den.coeffs, num.offset - (1.0 + gamma) * den.offset};
        };
        rows.push_back(row(f.strong_num[l], f.strong_den[l]));
        rows.push_back(row(f.weak_num[l], f.weak_den[l]));
    }
    return rows;
}

namespace
{

// Drops rows that hold everywhere in [0, cap]^n.
std::vector<AffineRow> binding_qos_rows(const InterferenceStructure &s, double min_rate, double cap)
{
    std::vector<AffineRow> rows = qos_rows(s, min_rate);
    std::erase_if(rows, [cap](const AffineRow &r) { return r.offset + (r.coeffs * cap).cwiseMin(0.0).sum() >= 0.0; });
    return rows;
}

} // namespace

std::optional<PowerMatrix> find_feasible_point(const InterferenceStructure &s, double min_rate_bps_hz,
                                               double max_tx_power_w, const SolverOptions &options)
{
    s.validate();
    const Eigen::Index n = 2 * s.clusters();
    const Eigen::Index t_index = n;

    // Variables (x, t); maximize t subject to every normalized slack >= t.
    ConcaveLogProblem lp;
    lp.linear_cost = Eigen::VectorXd::Zero(n + 1);
    lp.linear_cost(t_index) = -1.0;

    auto add = [&](const Eigen::VectorXd &coeffs, double offset, double norm) {
        AffineRow r{Eigen::VectorXd::Zero(n + 1), offset / norm};
        r.coeffs.head(n) = coeffs / norm;
        r.coeffs(t_index) = -1.0;
        lp.constraints.push_back(std::move(r));
    };

    for (const auto &row : binding_qos_rows(s, min_rate_bps_hz, max_tx_power_w))
        add(row.coeffs, row.offset, (row.coeffs * max_tx_power_w).lpNorm<1>() + std::abs(row.offset));
    for (Eigen::Index i = 0; i < n; ++i)
    {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(i) = 1.0;
        add(e, 0.0, max_tx_power_w);
        add(-e, max_tx_power_w, max_tx_power_w);
    }

    Eigen::VectorXd start(n + 1);
    start.head(n).setConstant(max_tx_power_w / 2.0);
    start(t_index) = 0.0;
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto &r : lp.constraints)
        smallest = std::min(smallest, r.value(start));
    start(t_index) = smallest - 0.5;

    lp.lower = Eigen::VectorXd::Zero(n + 1);
    lp.upper = Eigen::VectorXd::Constant(n + 1, max_tx_power_w);
    lp.lower(t_index) = start(t_index) - 1.0;
    lp.upper(t_index) = 1.0;

    const SolveResult sol = solve(lp, start, options);
    if (!(sol.point(t_index) > 0.0))
        return std::nullopt;
    return unflat(sol.point.head(n));
}

double f2_value(const PowerMatrix &p, const InterferenceStructure &s)
{
    const RateForms f = rate_forms(s);
    const auto x = flat(p);
    double v = 0.0;
    for (const auto &den : f.weak_den)
        v += s.slot_scale * std::log2(den.value(x));
    return v;
}

PowerMatrix grad_f2(const PowerMatrix &p, const InterferenceStructure &s)
{
    const RateForms f = rate_forms(s);
    const auto x = flat(p);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
    for (const auto &den : f.weak_den)
        g += s.slot_scale * den.coeffs / (std::numbers::ln2 * den.value(x));
    return unflat(g);
}

double dc_objective(double lambda, const PowerMatrix &p, const InterferenceStructure &s, const EEParams &params)
{
    const auto x = flat(p);
    double f1 = -lambda * params.amplifier_inefficiency * s.slot_scale * x.sum();
    for (const auto &term : f1_log_terms(s))
        f1 += term.weight * std::log2(term.arg.value(x));
    return f1 - f2_value(p, s);
}

InnerResult dc_inner_solve(double lambda, const InterferenceStructure &s, const PowerMatrix &p0,
                           const EEParams &params, const OptimizerOptions &options)
{
    s.validate();
    const Eigen::Index n = 2 * s.clusters();

    ConcaveLogProblem sub;
    sub.log_terms = f1_log_terms(s);
    sub.constraints = binding_qos_rows(s, params.min_rate_bps_hz, params.max_tx_power_w);
    sub.lower = Eigen::VectorXd::Zero(n);
    sub.upper = Eigen::VectorXd::Constant(n, params.max_tx_power_w);
    const Eigen::VectorXd power_cost = Eigen::VectorXd::Constant(n, lambda * params.amplifier_inefficiency * s.slot_scale);

    InnerResult out;
    out.powers = p0;
    out.objectives.push_back(dc_objective(lambda, p0, s, params));

    while (out.iterations < options.max_inner_iterations)
    {
        // Linearize f2 at the current iterate.
        sub.linear_cost = power_cost + flat(grad_f2(out.powers, s));
        const SolveResult sol = solve(sub, flat(out.powers), options.solver);
        ++out.iterations;

        const PowerMatrix next = unflat(sol.point);
        const double value = dc_objective(lambda, next, s, params);
        const double gain = value - out.objectives.back();
        if (gain < 0.0)
            break; // no improvement beyond rounding; keep the incumbent
        out.powers = next;
        out.objectives.push_back(value);
        if (gain < options.inner_tolerance)
            break;
    }
    return out;
}

EEResult dinkelbach_solve(const InterferenceStructure &s, const EEParams &params, const OptimizerOptions &options)
{
    s.validate();
    const Eigen::Index n = s.clusters();
    EEResult result = empty_result(n);

    const auto start = find_feasible_point(s, params.min_rate_bps_hz, params.max_tx_power_w, options.solver);
    if (!start)
        return result;

    double lambda = 0.0;
    PowerMatrix p = *start;
    for (int k = 0; k < options.max_outer_iterations; ++k)
    {
        // Warm start from the previous outer solution: its subtractive value
        // at the new lambda is zero, so epsilon stays nonnegative.
        InnerResult inner = dc_inner_solve(lambda, s, p, params, options);
        p = inner.powers;

        const double rate = compute_rates(p, s).sum();
        const double power = consumed_power(p, s, params);
        const double epsilon = rate - lambda * power;
        lambda = rate / power;

        result.outer_trace.push_back({lambda, epsilon});
        result.inner_iterations.push_back(inner.iterations);
        result.inner_objectives.push_back(std::move(inner.objectives));

        if (epsilon <= options.outer_tolerance)
        {
            // No achievable rate at all: power only adds cost.
            if (rate == 0.0 && params.min_rate_bps_hz == 0.0)
                p.setZero();
            result.powers = p;
            finish(result, s, params);
            return result;
        }
    }

    result.powers = p;
    finish(result, s, params);
    throw DinkelbachError("Dinkelbach iteration cap reached before epsilon converged.", std::move(result));
}

EEResult max_se_solve(const InterferenceStructure &s, const EEParams &params, const OptimizerOptions &options)
{
    s.validate();
    EEResult result = empty_result(s.clusters());

    const auto start = find_feasible_point(s, params.min_rate_bps_hz, params.max_tx_power_w, options.solver);
    if (!start)
        return result;

    InnerResult inner = dc_inner_solve(0.0, s, *start, params, options);
    result.powers = inner.powers;
    finish(result, s, params);
    result.outer_trace.push_back({result.ee, result.rates.sum()});
    result.inner_iterations.push_back(inner.iterations);
    result.inner_objectives.push_back(std::move(inner.objectives));
    return result;
}

} // namespace mmnoma
