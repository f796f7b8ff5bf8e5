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

#include "mmnoma/beamforming.hpp"
#include "mmnoma/sim_harness.hpp"

using namespace mmnoma;

namespace
{

UserChannel single_path(double theta, cplx gain, const SystemConfig &c)
{
    UserChannel u;
    u.distance_m = 10.0;
    u.path_angles = {theta};
    u.path_gains = {gain};
    u.vector = reconstruct_channel(u.path_angles, u.path_gains, c);
    return u;
}

std::vector<Eigen::VectorXcd> strong_of(const Realization &r)
{
    std::vector<Eigen::VectorXcd> out;
    for (const auto &cl : r.beamforming.clusters.clusters)
        out.push_back(r.channels.users[cl.strong_index].vector);
    return out;
}

std::vector<Eigen::VectorXcd> weak_of(const Realization &r)
{
    std::vector<Eigen::VectorXcd> out;
    for (const auto &cl : r.beamforming.clusters.clusters)
        out.push_back(r.channels.users[cl.weak_index].vector);
    return out;
}

} // namespace

TEST_CASE("codebook holds every stored path of both users")
{
    SystemConfig c;
    Rng rng(2);
    for (int paths : {1, 3})
    {
        c.num_paths = paths;
        const UserChannel a = generate_user_channel(rng, 50.0, c), b = generate_user_channel(rng, 80.0, c);
        const auto book = build_codebook(a, b, c);
        REQUIRE(static_cast<int>(book.size()) == 2 * paths);
        for (int f = 0; f < paths; ++f)
        {
            CHECK((book[f] - steering_vector(a.path_angles[f], c.num_antennas, c.antenna_spacing_ratio)).norm() < 1e-15);
            CHECK((book[paths + f] - steering_vector(b.path_angles[f], c.num_antennas, c.antenna_spacing_ratio)).norm() <
                  1e-15);
        }
    }
    c.num_paths = 2;
    UserChannel a = generate_user_channel(rng, 50.0, c);
    UserChannel b = a;
    const auto book = build_codebook(a, b, c);
    CHECK(book.size() == 4);
    CHECK((book[0] - book[2]).norm() == 0.0);
    CHECK((book[1] - book[3]).norm() == 0.0);
}

TEST_CASE("analog beam selection")
{
    SystemConfig c;
    c.num_paths = 1;
    const int n = c.num_antennas;
    // sin(theta_2) = 2 / N puts user 2 on an orthogonal ULA beam
    const UserChannel strong = single_path(0.0, 1.0, c);
    const UserChannel weak = single_path(std::asin(2.0 / n), 0.1, c);
    const auto book = build_codebook(strong, weak, c);
    CHECK(std::abs(book[0].dot(book[1])) < 1e-12);
    CHECK(analog_beam_objective(book[0], strong.vector, weak.vector) == doctest::Approx(std::sqrt(n)));
    CHECK(analog_beam_objective(book[1], strong.vector, weak.vector) == doctest::Approx(0.1 * std::sqrt(n)));
    CHECK(select_analog_beam(book, strong.vector, weak.vector) == 0);

    CHECK(select_analog_beam({book[1]}, strong.vector, weak.vector) == 0);
    // equal objectives: lowest index wins
    CHECK(select_analog_beam({book[0], book[0]}, strong.vector, weak.vector) == 0);
}

TEST_CASE("analog matrix rows are conjugated codewords")
{
    SystemConfig c;
    const std::vector<Eigen::VectorXcd> beams{steering_vector(0.3, c.num_antennas, 0.5),
                                              steering_vector(1.1, c.num_antennas, 0.5)};
    const Eigen::MatrixXcd b = analog_matrix(beams);
    REQUIRE(b.rows() == 2);
    REQUIRE(b.cols() == c.num_antennas);
    CHECK((b.row(1).transpose() - beams[1].conjugate()).norm() < 1e-15);
    // (B h)_l = a^H h: a pure path at 0.3 is received with the full array gain
    const Eigen::VectorXcd h = steering_vector(0.3, c.num_antennas, 0.5);
    CHECK(std::abs((b * h)(0)) == doctest::Approx(1.0));
}

TEST_CASE("zero-forcing: single cluster")
{
    SystemConfig c;
    c.num_paths = 1;
    const UserChannel u = single_path(0.4, cplx(0.3, -0.2), c);
    const Eigen::MatrixXcd b = analog_matrix({steering_vector(0.4, c.num_antennas, 0.5)});
    const Eigen::MatrixXcd v = zero_forcing_digital(b, {u.vector});
    const cplx response = (v.row(0) * b * u.vector)(0);
    CHECK(std::abs(response.imag()) < 1e-12 * std::abs(response));
    CHECK(response.real() > 0.0);
    CHECK((v.row(0) * b).norm() == doctest::Approx(1.0));
}

TEST_CASE("zero-forcing rejects a singular effective channel")
{
    SystemConfig c;
    const Eigen::VectorXcd h = steering_vector(0.2, c.num_antennas, 0.5);
    const Eigen::MatrixXcd b =
        analog_matrix({steering_vector(0.2, c.num_antennas, 0.5), steering_vector(0.9, c.num_antennas, 0.5)});
    CHECK_THROWS_AS(zero_forcing_digital(b, {h, 2.0 * h}), BeamformingRejected);
    CHECK_THROWS_AS(zero_forcing_digital(b, {h}), BeamformingRejected);
}

TEST_CASE("accepted drops: nulling, normalization, labels, selection optimality")
{
    SystemConfig c;
    for (std::uint64_t d = 0; d < 20; ++d)
    {
        const Realization r = draw_realization(c, drop_seed(77, d));
        const BeamformingState &bf = r.beamforming;
        const auto strong = strong_of(r), weak = weak_of(r);
        const auto L = static_cast<Eigen::Index>(strong.size());
        REQUIRE(L == c.num_clusters());
        REQUIRE(bf.digital_vectors.rows() == L);
        REQUIRE(bf.analog_matrix.rows() == c.num_rf_chains);

        Eigen::MatrixXcd h(c.num_rf_chains, L);
        for (Eigen::Index l = 0; l < L; ++l)
            h.col(l) = bf.analog_matrix * strong[l];
        const Eigen::MatrixXcd response = bf.digital_vectors * h;
        for (Eigen::Index l = 0; l < L; ++l)
        {
            CAPTURE(d);
            CAPTURE(l);
            CHECK((bf.digital_vectors.row(l) * bf.analog_matrix).norm() == doctest::Approx(1.0));
            const cplx own = response(l, l);
            CHECK(own.real() > 0.0);
            CHECK(std::abs(own.imag()) < 1e-10 * own.real());
            for (Eigen::Index j = 0; j < L; ++j)
                if (j != l)
                    CHECK(std::abs(response(l, j)) < 1e-8 * std::abs(own));
            CHECK(bf.rho(l) >= bf.alpha(l, l));

            // the chosen beam is the best codeword of its cluster
            const auto &cl = bf.clusters.clusters[l];
            const auto book = build_codebook(r.channels.users[cl.strong_index], r.channels.users[cl.weak_index], c);
            const double chosen = analog_beam_objective(bf.analog_beams[l], strong[l], weak[l]);
            for (const auto &w : book)
                CHECK(chosen >= analog_beam_objective(w, strong[l], weak[l]) - 1e-12);
        }
    }
}

TEST_CASE("effective gains against direct evaluation")
{
    SystemConfig c;
    const Realization r = draw_realization(c, 1234);
    const BeamformingState &bf = r.beamforming;
    const auto strong = strong_of(r), weak = weak_of(r);
    const double noise = r.channels.noise_power_w;
    for (Eigen::Index l = 0; l < bf.rho.size(); ++l)
    {
        const Eigen::RowVectorXcd w = bf.digital_vectors.row(l) * bf.analog_matrix;
        CHECK(bf.rho(l) == doctest::Approx(std::norm(w.dot(strong[l].conjugate())) / noise).epsilon(1e-12));
        // w h as an explicit sum
        for (Eigen::Index j = 0; j < bf.rho.size(); ++j)
        {
            cplx acc = 0.0;
            for (Eigen::Index k = 0; k < w.size(); ++k)
                acc += w(k) * weak[j](k);
            CHECK(bf.alpha(j, l) == doctest::Approx(std::norm(acc) / noise).epsilon(1e-12));
            CHECK(bf.alpha(j, l) >= 0.0);
        }
    }

    const EffectiveGains base = effective_gains(bf.analog_matrix, bf.digital_vectors, strong, weak, noise);
    const EffectiveGains scaled = effective_gains(bf.analog_matrix, bf.digital_vectors, strong, weak, 4.0 * noise);
    CHECK((scaled.rho * 4.0 - base.rho).norm() <= 1e-12 * base.rho.norm());
    CHECK((scaled.alpha * 4.0 - base.alpha).norm() <= 1e-12 * base.alpha.norm());

    auto zeroed = weak;
    zeroed[2].setZero();
    const EffectiveGains z = effective_gains(bf.analog_matrix, bf.digital_vectors, strong, zeroed, noise);
    CHECK(z.alpha.row(2).isZero(0.0));
}

TEST_CASE("design is reproducible")
{
    SystemConfig c;
    const Realization a = draw_realization(c, 5), b = draw_realization(c, 5);
    CHECK(a.seed == b.seed);
    CHECK(a.beamforming.rho == b.beamforming.rho);
    CHECK(a.beamforming.alpha == b.beamforming.alpha);
}
