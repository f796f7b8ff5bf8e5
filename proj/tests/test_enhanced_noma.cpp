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

#include <random>

#include "mmnoma/enhanced_noma.hpp"
#include "oracles.hpp"

using namespace mmnoma;

TEST_CASE("interference metric")
{
    CHECK(cluster_interference_metric(Eigen::MatrixXd::Constant(1, 1, 5.0)).isZero(0.0));
    const Eigen::MatrixXd a = (Eigen::MatrixXd(2, 2) << 1, 2, 3, 4).finished();
    const Eigen::VectorXd g = cluster_interference_metric(a);
    CHECK(g(0) == doctest::Approx(2.0));
    CHECK(g(1) == doctest::Approx(3.0));
    CHECK(cluster_interference_metric(Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix()).isZero(0.0));
}

TEST_CASE("decoding order")
{
    CHECK(order_clusters(Eigen::Vector2d(2, 3)) == std::vector<int>{1, 0});
    CHECK(order_clusters(Eigen::Vector4d::Constant(1.5)) == std::vector<int>{0, 1, 2, 3});
    CHECK(order_clusters(Eigen::Vector3d(9, 5, 1)) == std::vector<int>{0, 1, 2});
    CHECK(order_clusters(Eigen::Vector4d(1, 7, 7, 2)) == std::vector<int>{1, 2, 3, 0});
}

TEST_CASE("enhanced mask follows the decoding order")
{
    const Eigen::MatrixXd a = (Eigen::MatrixXd(3, 3) << 1, 5, 5, 0, 1, 1, 2, 2, 1).finished();
    // Gamma = [10, 1, 4] -> order 0, 2, 1
    const InterferenceStructure s = enhanced_structure(Eigen::Vector3d::Constant(10.0), a);
    CHECK_NOTHROW(s.validate());
    CHECK(s.shared_slot);
    CHECK(s.slot_scale == 1.0);
    // cluster decoded first (0) sees everyone decoded later
    CHECK(s.mask(2, 0));
    CHECK(s.mask(1, 0));
    CHECK(s.mask(1, 2));
    // the last decoded cluster (1) sees nobody
    CHECK_FALSE(s.mask(0, 1));
    CHECK_FALSE(s.mask(2, 1));
    CHECK_FALSE(s.mask(0, 2));
    for (int l = 0; l < 3; ++l)
        CHECK_FALSE(s.mask(l, l));

    PowerMatrix p = PowerMatrix::Constant(3, 2, 0.7);
    const RateMatrix r = compute_rates(p, s);
    CHECK(r(1, 1) == doctest::Approx(std::log2(1.0 + a(1, 1) * 0.7)));

    CHECK_THROWS_AS(enhanced_structure(Eigen::Vector3d::Ones(), a, {0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(enhanced_structure(Eigen::Vector3d::Ones(), a, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(enhanced_structure(Eigen::Vector3d::Ones(), a, {0, 1, 3}), std::invalid_argument);
}

TEST_CASE("single cluster equals plain NOMA")
{
    const Eigen::VectorXd rho = Eigen::VectorXd::Constant(1, 8.0);
    const Eigen::MatrixXd alpha = Eigen::MatrixXd::Constant(1, 1, 2.0);
    const InterferenceStructure e = enhanced_structure(rho, alpha), n = noma_structure(rho, alpha);
    CHECK(e.mask == n.mask);
    const PowerMatrix p = PowerMatrix::Constant(1, 2, 0.3);
    CHECK(compute_rates(p, e) == compute_rates(p, n));
}

TEST_CASE("random instances: dominance, feasibility monotonicity, sum-rate identity")
{
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k)
    {
        const int L = 1 + k % 8;
        const InterferenceStructure plain = oracle::random_noma(rng, L, 10.0);
        const InterferenceStructure enh = enhanced_structure(plain.rho, plain.alpha);
        PowerMatrix p(L, 2);
        for (int l = 0; l < L; ++l)
            p(l, 0) = u(rng), p(l, 1) = u(rng);

        const RateMatrix rp = compute_rates(p, plain), re = compute_rates(p, enh);
        CHECK((re.array() >= rp.array() - 1e-12).all());
        CHECK((re.rowwise().sum() - cluster_sum_rates(p, enh)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((re - oracle::rates(enh, p)).cwiseAbs().maxCoeff() < 1e-12);

        const double rmin = 0.3;
        if (rp.minCoeff() >= rmin)
            CHECK(re.minCoeff() >= rmin);
        const auto plain_point = find_feasible_point(plain, rmin, 1.0);
        if (plain_point)
            CHECK(find_feasible_point(enh, rmin, 1.0).has_value());
    }
}
