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

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace mmnoma
{

// coeffs^T x + offset.
struct AffineRow
{
    Eigen::VectorXd coeffs;
    double offset = 0.0;

    double value(const Eigen::VectorXd &x) const { return coeffs.dot(x) + offset; }
};

// weight * log2(arg(x)).
struct LogTerm
{
    AffineRow arg;
    double weight = 1.0;
};

/// Concave program
///
///     maximize    sum_t weight_t * log2(a_t^T x + b_t)  -  c^T x
///     subject to  g_k^T x + h_k >= 0,   lower <= x <= upper.
///
/// Log weights must be nonnegative so the objective is concave.
struct ConcaveLogProblem
{
    std::vector<LogTerm> log_terms;
    Eigen::VectorXd linear_cost;
    std::vector<AffineRow> constraints;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Eigen::Index dimension() const { return linear_cost.size(); }

    // -inf outside the domain of any log term.
    double objective(const Eigen::VectorXd &x) const;

    // Smallest slack over constraints and box sides (negative when infeasible).
    double min_slack(const Eigen::VectorXd &x) const;

    // Throws std::invalid_argument on inconsistent dimensions or negative weights.
    void validate() const;
};

struct SolverOptions
{
    double tol = 1e-8;          // KKT residual target
    int max_newton_steps = 500; // summed over all barrier stages
    double mu_initial = 1.0;
    double mu_factor = 10.0;
};

struct SolveResult
{
    Eigen::VectorXd point;
    double objective = 0.0;
    double kkt_residual = 0.0;
    int newton_steps = 0;
};

class SolverError : public std::runtime_error
{
  public:
    SolverError(const std::string &what, Eigen::VectorXd best_point, double best_objective)
        : std::runtime_error(what), best_point(std::move(best_point)), best_objective(best_objective)
    {
    }

    Eigen::VectorXd best_point;
    double best_objective;
};

/// Log-barrier interior-point method with damped Newton centering.
///
/// The barrier weight starts at options.mu_initial and shrinks by
/// options.mu_factor per stage until it falls below options.tol / 10; the
/// KKT residual reported is the stationarity norm of the Lagrangian plus the
/// largest complementarity product, in unit-box coordinates, with multipliers
/// either mu / slack or fitted on the near-active rows (whichever is smaller).
/// Variables are rescaled internally to the unit box. The result never has a
/// lower objective than `start`, and its box coordinates are clamped.
///
/// Throws std::invalid_argument when `start` is not strictly feasible and
/// SolverError when the Newton step cap is reached.
SolveResult solve(const ConcaveLogProblem &problem, const Eigen::VectorXd &start, const SolverOptions &options = {});

} // namespace mmnoma
