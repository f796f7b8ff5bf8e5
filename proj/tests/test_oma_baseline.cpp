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
#include <random>

#include "mmnoma/oma_baseline.hpp"
#include "oracles.hpp"

using namespace mmnoma;

TEST_CASE("single cluster rates are half-slot point-to-point rates")
{
    const InterferenceStructure s =
        oma_structure(Eigen::VectorXd::Constant(1, 7.0), Eigen::MatrixXd::Constant(1, 1, 3.0));
    CHECK_FALSE(s.shared_slot);
    CHECK(s.slot_scale == 0.5);
    const PowerMatrix p = (PowerMatrix(1, 2) << 0.5, 2.0).finished();
    const RateMatrix r = compute_rates(p, s);
    CHECK(r(0, 0) == doctest::Approx(0.5 * std::log2(1.0 + 3.5)));
    CHECK(r(0, 1) == doctest::Approx(0.5 * std::log2(1.0 + 6.0)));
}

TEST_CASE("strong users are interference-free, weak users see every other weak user")
{
    std::mt19937_64 rng(71);
    const InterferenceStructure plain = oracle::random_noma(rng, 4, 10.0);
    const InterferenceStructure s = oma_structure(plain.rho, plain.alpha);
    PowerMatrix p = PowerMatrix::Constant(4, 2, 0.4);
    const RateMatrix r = compute_rates(p, s);
    for (int l = 0; l < 4; ++l)
    {
        CHECK(r(l, 0) == doctest::Approx(0.5 * std::log2(1.0 + plain.rho(l) * 0.4)));
        double inter = 0.0;
        for (int j = 0; j < 4; ++j)
            if (j != l)
                inter += plain.alpha(j, l) * 0.4;
        CHECK(r(l, 1) == doctest::Approx(0.5 * std::log2(1.0 + plain.alpha(l, l) * 0.4 / (inter + 1.0))));
    }
}

TEST_CASE("QoS rows use the doubled exponent and drop the intra-cluster term")
{
    std::mt19937_64 rng(72);
    const InterferenceStructure plain = oracle::random_noma(rng, 3, 10.0);
    const InterferenceStructure s = oma_structure(plain.rho, plain.alpha);
    const double rmin = 0.3;
    const auto oma = qos_rows(s, rmin);
    const auto noma = qos_rows(plain, 2.0 * rmin);
    REQUIRE(oma.size() == noma.size());
    const double gamma = std::exp2(2.0 * rmin) - 1.0;
    for (int l = 0; l < 3; ++l)
    {
        // strong row: rho P - gamma >= 0 only
        const AffineRow &strong = oma[2 * l];
        CHECK(strong.offset == doctest::Approx(-gamma));
        CHECK(strong.coeffs(l) == doctest::Approx(plain.rho(l)));
        CHECK(strong.coeffs.cwiseAbs().sum() == doctest::Approx(plain.rho(l)));
        // weak row identical to NOMA's at 2 R_min
        CHECK((oma[2 * l + 1].coeffs - noma[2 * l + 1].coeffs).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(oma[2 * l + 1].offset == doctest::Approx(noma[2 * l + 1].offset));
    }
}

TEST_CASE("OMA energy accounting is time-averaged")
{
    const InterferenceStructure s =
        oma_structure(Eigen::VectorXd::Constant(1, 7.0), Eigen::MatrixXd::Constant(1, 1, 3.0));
    const EEParams params{2.0, 0.1, 1.0, 0.0};
    const PowerMatrix p = (PowerMatrix(1, 2) << 0.5, 0.3).finished();
    CHECK(consumed_power(p, s, params) == doctest::Approx(2.0 * 0.8 / 2.0 + 0.1));
}

TEST_CASE("feasibility boundaries")
{
    const Eigen::VectorXd rho = Eigen::VectorXd::Constant(1, 10.0);
    const Eigen::MatrixXd alpha = Eigen::MatrixXd::Constant(1, 1, 5.0);
    const InterferenceStructure s = oma_structure(rho, alpha);
    // strong user needs 2^(2R) - 1 <= rho * P_max; weak user alpha * P_max
    const double cap = 0.1;
    const double rmin_edge = 0.5 * std::log2(1.0 + 5.0 * cap);
    CHECK(find_feasible_point(s, 0.98 * rmin_edge, cap).has_value());
    CHECK_FALSE(find_feasible_point(s, 1.02 * rmin_edge, cap).has_value());
    CHECK(find_feasible_point(s, 0.0, 1e-9).has_value());
    CHECK(oma_ee_solve(s, {1.0, 0.1, cap, 0.0}).feasible);
    CHECK_FALSE(oma_ee_solve(s, {1.0, 0.1, cap, 1.02 * rmin_edge}).feasible);
}

TEST_CASE("single cluster: OMA optimum never beats NOMA")
{
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 5; ++k)
    {
        const double a = 5.0 + 50.0 * u(rng);
        const Eigen::VectorXd rho = Eigen::VectorXd::Constant(1, a * (1.0 + 3.0 * u(rng)));
        const Eigen::MatrixXd alpha = Eigen::MatrixXd::Constant(1, 1, a);
        const EEParams params{1.0, 0.1, 0.1, 0.0};
        const EEResult oma = oma_ee_solve(oma_structure(rho, alpha), params);
        const EEResult noma = dinkelbach_solve(noma_structure(rho, alpha), params);
        REQUIRE(oma.feasible);
        REQUIRE(noma.feasible);
        CHECK(oma.ee <= noma.ee + 1e-9);
        // grid cross-check of both formulations
        const oracle::GridBest go = oracle::grid_max_ee(oma_structure(rho, alpha), params, 0.005);
        const oracle::GridBest gn = oracle::grid_max_ee(noma_structure(rho, alpha), params, 0.005);
        CHECK(go.value <= gn.value + 1e-12);
        CHECK(oma.ee >= go.value - 1e-9);
        CHECK(noma.ee >= gn.value - 1e-9);
    }
}

TEST_CASE("oma_ee_solve refuses a shared-slot structure")
{
    const InterferenceStructure s =
        noma_structure(Eigen::VectorXd::Constant(1, 7.0), Eigen::MatrixXd::Constant(1, 1, 3.0));
    CHECK_THROWS_AS(oma_ee_solve(s, {}), std::invalid_argument);
}
