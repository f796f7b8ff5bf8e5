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

#include "mmnoma/convex_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace mmnoma
{
namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCenteringDecrement = 1e-16; // stop centering when decrement^2 / 2 is below this
constexpr double kArmijo = 0.25;
constexpr double kFractionToBoundary = 0.99;

// The problem with x = lower + scale .* z, so the box becomes [0, 1]^n and
// constraints implied by the box are dropped.
struct ScaledProblem
{
    Eigen::MatrixXd log_rows; // one row per log term
    Eigen::VectorXd log_offsets;
    Eigen::VectorXd log_weights; // already divided by ln 2
    Eigen::VectorXd cost;
    Eigen::MatrixXd rows;
    Eigen::VectorXd offsets;

    Eigen::Index n() const { return cost.size(); }
};

ScaledProblem rescale(const ConcaveLogProblem &p, const Eigen::VectorXd &scale)
{
    const Eigen::Index n = p.dimension();
    ScaledProblem s;

    const auto t = static_cast<Eigen::Index>(p.log_terms.size());
    s.log_rows.resize(t, n);
    s.log_offsets.resize(t);
    s.log_weights.resize(t);
    for (Eigen::Index k = 0; k < t; ++k)
    {
        const auto &term = p.log_terms[k];
        s.log_rows.row(k) = term.arg.coeffs.cwiseProduct(scale).transpose();
        s.log_offsets(k) = term.arg.value(p.lower);
        s.log_weights(k) = term.weight / std::numbers::ln2;
    }

    s.cost = p.linear_cost.cwiseProduct(scale);

    std::vector<Eigen::Index> kept;
    for (std::size_t k = 0; k < p.constraints.size(); ++k)
    {
        const auto &c = p.constraints[k];
        const Eigen::VectorXd g = c.coeffs.cwiseProduct(scale);
        const double worst = c.value(p.lower) + g.cwiseMin(0.0).sum();
        if (worst < 0.0)
            kept.push_back(static_cast<Eigen::Index>(k));
    }
    s.rows.resize(static_cast<Eigen::Index>(kept.size()), n);
    s.offsets.resize(static_cast<Eigen::Index>(kept.size()));
    for (std::size_t r = 0; r < kept.size(); ++r)
    {
        const auto &c = p.constraints[kept[r]];
        s.rows.row(static_cast<Eigen::Index>(r)) = c.coeffs.cwiseProduct(scale).transpose();
        s.offsets(static_cast<Eigen::Index>(r)) = c.value(p.lower);
    }
    return s;
}

class Barrier
{
  public:
    explicit Barrier(const ScaledProblem &p) : p_(p) {}

    // Original objective in scaled coordinates.
    double objective(const Eigen::VectorXd &z) const
    {
        const Eigen::VectorXd args = p_.log_rows * z + p_.log_offsets;
        if ((args.array() <= 0.0).any())
            return -kInf;
        return p_.log_weights.dot(args.array().log().matrix()) - p_.cost.dot(z);
    }

    // -objective - mu * sum(log slacks); +inf outside the interior.
    double value(const Eigen::VectorXd &z, double mu) const
    {
        if ((z.array() <= 0.0).any() || (z.array() >= 1.0).any())
            return kInf;
        const Eigen::VectorXd slack = p_.rows * z + p_.offsets;
        if ((slack.array() <= 0.0).any())
            return kInf;
        const double f = objective(z);
        if (!std::isfinite(f))
            return kInf;
        return -f - mu * (slack.array().log().sum() + z.array().log().sum() + (1.0 - z.array()).log().sum());
    }

    void derivatives(const Eigen::VectorXd &z, double mu, Eigen::VectorXd &grad, Eigen::MatrixXd &hess) const
    {
        const Eigen::VectorXd args = p_.log_rows * z + p_.log_offsets;
        const Eigen::VectorXd slack = p_.rows * z + p_.offsets;

        // Log terms: -w a / arg and w a a^T / arg^2.
        const Eigen::VectorXd inv_arg = args.cwiseInverse();
        const Eigen::VectorXd lw = p_.log_weights.cwiseProduct(inv_arg);
        grad = p_.cost - p_.log_rows.transpose() * lw;
        const Eigen::MatrixXd lr = (p_.log_weights.cwiseSqrt().cwiseProduct(inv_arg)).asDiagonal() * p_.log_rows;
        hess.noalias() = lr.transpose() * lr;

        // Constraint barrier.
        const Eigen::VectorXd inv_slack = slack.cwiseInverse();
        grad.noalias() -= mu * (p_.rows.transpose() * inv_slack);
        const Eigen::MatrixXd cr = inv_slack.asDiagonal() * p_.rows;
        hess.noalias() += mu * (cr.transpose() * cr);

        // Box barrier.
        const Eigen::ArrayXd lo = z.array().inverse();
        const Eigen::ArrayXd hi = (1.0 - z.array()).inverse();
        grad.array() += mu * (hi - lo);
        hess.diagonal().array() += mu * (lo.square() + hi.square());
    }

    // Gradient of the original objective (ascent direction).
    Eigen::VectorXd objective_gradient(const Eigen::VectorXd &z) const
    {
        const Eigen::VectorXd args = p_.log_rows * z + p_.log_offsets;
        return p_.log_rows.transpose() * p_.log_weights.cwiseQuotient(args) - p_.cost;
    }

    // Stationarity plus complementarity with nonnegative multipliers on the
    // constraints and box sides whose slack is below `active`. Two multiplier
    // estimates are tried: the barrier's mu / slack and a least-squares fit on
    // the near-active rows; the smaller residual is a valid certificate.
    double kkt_residual(const Eigen::VectorXd &z, double mu, double active) const
    {
        const Eigen::Index n = z.size();
        const Eigen::VectorXd g = objective_gradient(z);
        const Eigen::VectorXd slack_c = p_.rows * z + p_.offsets;

        // Rows of "slack >= 0" as outward normals: grad f = sum lambda_k * (-grad slack_k).
        Eigen::MatrixXd normals(n, slack_c.size() + 2 * n);
        Eigen::VectorXd slack(slack_c.size() + 2 * n);
        normals.leftCols(slack_c.size()) = -p_.rows.transpose();
        slack.head(slack_c.size()) = slack_c;
        normals.rightCols(2 * n).setZero();
        for (Eigen::Index i = 0; i < n; ++i)
        {
            normals(i, slack_c.size() + i) = -1.0; // z >= 0
            slack(slack_c.size() + i) = z(i);
            normals(i, slack_c.size() + n + i) = 1.0; // z <= 1
            slack(slack_c.size() + n + i) = 1.0 - z(i);
        }

        auto residual = [&](const Eigen::VectorXd &lambda) {
            const double stat = (g - normals * lambda).lpNorm<Eigen::Infinity>();
            return stat + lambda.cwiseProduct(slack).lpNorm<Eigen::Infinity>();
        };

        const Eigen::VectorXd barrier_lambda = mu * slack.cwiseInverse();
        double best = residual(barrier_lambda);

        std::vector<Eigen::Index> act;
        for (Eigen::Index k = 0; k < slack.size(); ++k)
            if (slack(k) <= active)
                act.push_back(k);
        Eigen::VectorXd lambda = Eigen::VectorXd::Zero(slack.size());
        if (!act.empty())
        {
            Eigen::MatrixXd a(n, static_cast<Eigen::Index>(act.size()));
            for (std::size_t j = 0; j < act.size(); ++j)
                a.col(static_cast<Eigen::Index>(j)) = normals.col(act[j]);
            const Eigen::VectorXd fit = a.completeOrthogonalDecomposition().solve(g);
            for (std::size_t j = 0; j < act.size(); ++j)
                lambda(act[j]) = std::max(fit(static_cast<Eigen::Index>(j)), 0.0);
        }
        return std::min(best, residual(lambda));
    }

    // Largest step in (0, 1] keeping the point strictly interior, damped.
    double max_step(const Eigen::VectorXd &z, const Eigen::VectorXd &d) const
    {
        double step = 1.0;
        auto limit = [&](double value, double rate) {
            if (rate < 0.0)
                step = std::min(step, kFractionToBoundary * value / -rate);
        };
        for (Eigen::Index i = 0; i < z.size(); ++i)
        {
            limit(z(i), d(i));
            limit(1.0 - z(i), -d(i));
        }
        const Eigen::VectorXd slack = p_.rows * z + p_.offsets;
        const Eigen::VectorXd rate = p_.rows * d;
        for (Eigen::Index k = 0; k < slack.size(); ++k)
            limit(slack(k), rate(k));
        const Eigen::VectorXd args = p_.log_rows * z + p_.log_offsets;
        const Eigen::VectorXd arg_rate = p_.log_rows * d;
        for (Eigen::Index k = 0; k < args.size(); ++k)
            limit(args(k), arg_rate(k));
        return step;
    }

  private:
    const ScaledProblem &p_;
};

} // namespace

double ConcaveLogProblem::objective(const Eigen::VectorXd &x) const
{
    double f = -linear_cost.dot(x);
    for (const auto &term : log_terms)
    {
        const double arg = term.arg.value(x);
        if (!(arg > 0.0))
            return -kInf;
        f += term.weight * std::log2(arg);
    }
    return f;
}

double ConcaveLogProblem::min_slack(const Eigen::VectorXd &x) const
{
    double s = std::min((x - lower).minCoeff(), (upper - x).minCoeff());
    for (const auto &c : constraints)
        s = std::min(s, c.value(x));
    return s;
}

void ConcaveLogProblem::validate() const
{
    const Eigen::Index n = dimension();
    if (n < 1)
        throw std::invalid_argument("Problem has no variables.");
    if (lower.size() != n || upper.size() != n)
        throw std::invalid_argument("Box bounds do not match the problem dimension.");
    if (!(upper.array() > lower.array()).all() || !upper.allFinite() || !lower.allFinite())
        throw std::invalid_argument("Box bounds must be finite with upper > lower.");
    for (const auto &term : log_terms)
    {
        if (term.arg.coeffs.size() != n)
            throw std::invalid_argument("Log term dimension mismatch.");
        if (!(term.weight >= 0.0))
            throw std::invalid_argument("Log term weights must be nonnegative.");
    }
    for (const auto &c : constraints)
        if (c.coeffs.size() != n)
            throw std::invalid_argument("Constraint dimension mismatch.");
}

SolveResult solve(const ConcaveLogProblem &problem, const Eigen::VectorXd &start, const SolverOptions &options)
{
    problem.validate();
    if (start.size() != problem.dimension())
        throw std::invalid_argument("Start point dimension mismatch.");
    if (!(problem.min_slack(start) > 0.0) || !std::isfinite(problem.objective(start)))
        throw std::invalid_argument("Start point is not strictly feasible.");

    const Eigen::VectorXd scale = problem.upper - problem.lower;
    const ScaledProblem scaled = rescale(problem, scale);
    const Barrier barrier(scaled);
    const Eigen::Index n = scaled.n();

    Eigen::VectorXd z = (start - problem.lower).cwiseQuotient(scale);
    Eigen::VectorXd best_z = z;
    double best_obj = barrier.objective(z);

    Eigen::VectorXd grad(n), d(n), trial(n);
    Eigen::MatrixXd hess(n, n);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(n);

    const double mu_final = options.tol / 10.0;
    double mu = std::max(options.mu_initial, mu_final);
    int steps = 0;
    for (;;)
    {
        double phi = barrier.value(z, mu);
        for (;;)
        {
            barrier.derivatives(z, mu, grad, hess);
            ldlt.compute(hess);
            d = ldlt.solve(-grad);
            const double decrement = -grad.dot(d);
            if (!(decrement / 2.0 > kCenteringDecrement))
                break;

            if (++steps > options.max_newton_steps)
                throw SolverError("Barrier solver exceeded the Newton step cap.",
                                  problem.lower + scale.cwiseProduct(best_z), best_obj);

            double t = barrier.max_step(z, d);
            double phi_trial = kInf;
            while (t > 1e-16)
            {
                trial = z + t * d;
                phi_trial = barrier.value(trial, mu);
                if (phi_trial <= phi - kArmijo * t * decrement)
                    break;
                t *= 0.5;
            }
            if (!(t > 1e-16) || !(phi_trial < phi))
                break; // rounding floor
            z = trial;
            phi = phi_trial;

            const double obj = barrier.objective(z);
            if (obj > best_obj)
            {
                best_obj = obj;
                best_z = z;
            }
        }
        if (mu <= mu_final)
            break;
        mu = std::max(mu / options.mu_factor, mu_final);
    }

    SolveResult result;
    result.newton_steps = steps;

    result.kkt_residual = barrier.kkt_residual(z, mu, std::sqrt(mu_final));

    const double final_obj = barrier.objective(z);
    const double start_obj = problem.objective(start);
    Eigen::VectorXd x = problem.lower + scale.cwiseProduct(z);
    x = x.cwiseMax(problem.lower).cwiseMin(problem.upper);
    if (problem.objective(x) < start_obj || !std::isfinite(final_obj))
        x = start;
    result.point = x;
    result.objective = problem.objective(x);
    return result;
}

} // namespace mmnoma
