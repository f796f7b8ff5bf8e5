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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mmnoma/convex_solver.hpp"
#include "oracles.hpp"

using namespace mmnoma;

namespace
{

ConcaveLogProblem one_variable(double cost, double upper)
{
    ConcaveLogProblem p;
    p.log_terms.push_back({{Eigen::VectorXd::Ones(1), 1.0}, 1.0});
    p.linear_cost = Eigen::VectorXd::Constant(1, cost);
    p.lower = Eigen::VectorXd::Zero(1);
    p.upper = Eigen::VectorXd::Constant(1, upper);
    return p;
}

} // namespace

TEST_CASE("log2(1 + p) - p on [0, 10]")
{
    const ConcaveLogProblem p = one_variable(1.0, 10.0);
    const SolveResult r = solve(p, Eigen::VectorXd::Constant(1, 5.0));
    const double expected = 1.0 / std::numbers::ln2 - 1.0;
    CHECK(r.point(0) == doctest::Approx(expected).epsilon(1e-7));
    CHECK(r.objective == doctest::Approx(std::log2(1.0 + expected) - expected).epsilon(1e-12));
    CHECK(r.kkt_residual < 1e-8);
}

TEST_CASE("active upper bound")
{
    // stationary point 1/ln2 - 1 lies above the bound 0.2
    const SolveResult r = solve(one_variable(1.0, 0.2), Eigen::VectorXd::Constant(1, 0.1));
    CHECK(r.point(0) == doctest::Approx(0.2).epsilon(1e-7));
    CHECK(r.point(0) <= 0.2);
}

TEST_CASE("pure linear cost drives the variable to its lower bound")
{
    ConcaveLogProblem p;
    p.linear_cost = Eigen::VectorXd::Constant(2, 0.7);
    p.lower = Eigen::VectorXd::Zero(2);
    p.upper = Eigen::VectorXd::Constant(2, 0.01);
    const SolveResult r = solve(p, Eigen::VectorXd::Constant(2, 0.005));
    CHECK(r.point.cwiseAbs().maxCoeff() < 1e-8);
    CHECK(r.point.minCoeff() >= 0.0);
    CHECK(r.kkt_residual < 1e-8);
}

TEST_CASE("start point must be strictly feasible")
{
    ConcaveLogProblem p = one_variable(1.0, 1.0);
    CHECK_THROWS_AS(solve(p, Eigen::VectorXd::Constant(1, 1.5)), std::invalid_argument);
    p.constraints.push_back({Eigen::VectorXd::Ones(1), -0.5}); // p >= 0.5
    CHECK_THROWS_AS(solve(p, Eigen::VectorXd::Constant(1, 0.25)), std::invalid_argument);
    CHECK_THROWS_AS(solve(p, Eigen::VectorXd::Constant(1, 0.5)), std::invalid_argument);
    CHECK_NOTHROW(solve(p, Eigen::VectorXd::Constant(1, 0.75)));
}

TEST_CASE("malformed problems are rejected")
{
    ConcaveLogProblem p = one_variable(1.0, 1.0);
    p.log_terms[0].weight = -1.0;
    CHECK_THROWS_AS(solve(p, Eigen::VectorXd::Constant(1, 0.5)), std::invalid_argument);
    p = one_variable(1.0, 1.0);
    p.log_terms[0].arg.coeffs = Eigen::VectorXd::Ones(2);
    CHECK_THROWS_AS(solve(p, Eigen::VectorXd::Constant(1, 0.5)), std::invalid_argument);
}

TEST_CASE("Newton step cap raises SolverError with the best iterate")
{
    SolverOptions opts;
    opts.max_newton_steps = 2;
    const ConcaveLogProblem p = one_variable(1.0, 10.0);
    const Eigen::VectorXd start = Eigen::VectorXd::Constant(1, 9.0);
    try
    {
        solve(p, start, opts);
        FAIL("expected SolverError");
    }
    catch (const SolverError &e)
    {
        CHECK(e.best_objective >= p.objective(start));
        CHECK(p.objective(e.best_point) == doctest::Approx(e.best_objective));
    }
}

TEST_CASE("random instances: grid oracle, feasibility, monotone improvement, start independence")
{
    std::mt19937_64 rng(99);
    for (int k = 0; k < 8; ++k)
    {
        const int dim = 1 + k % 4;
        Eigen::VectorXd start;
        const ConcaveLogProblem p = oracle::random_log_problem(rng, dim, start);
        const SolveResult r = solve(p, start);
        CAPTURE(k);
        CHECK(r.kkt_residual < 1e-8);
        CHECK(r.objective >= p.objective(start));
        CHECK(p.min_slack(r.point) >= -1e-9);
        CHECK((r.point.array() >= p.lower.array()).all());
        CHECK((r.point.array() <= p.upper.array()).all());

        // a second strictly feasible start, pulled towards the lower corner
        const Eigen::VectorXd other = 0.9 * start + 0.1 * (p.lower + 1e-3 * (p.upper - p.lower));
        if (p.min_slack(other) > 0.0)
        {
            const SolveResult r2 = solve(p, other);
            CHECK(std::abs(r2.objective - r.objective) < 1e-5);
        }

        const oracle::GridBest grid = oracle::face_grid_max(p, 1e-9);
        REQUIRE(grid.found);
        CHECK(std::abs(grid.value - r.objective) < 1e-6);
    }
}
