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

#include "mmnoma/beamforming.hpp"

#include <cmath>
#include <string>

#include "mmnoma/kernels.hpp"

namespace mmnoma
{

std::vector<Eigen::VectorXcd> build_codebook(const UserChannel &first, const UserChannel &second,
                                             const SystemConfig &config)
{
    std::vector<Eigen::VectorXcd> codebook;
    codebook.reserve(first.path_angles.size() + second.path_angles.size());
    for (const UserChannel *user : {&first, &second})
        for (double theta : user->path_angles)
            codebook.push_back(steering_vector(theta, config.num_antennas, config.antenna_spacing_ratio));
    return codebook;
}

double analog_beam_objective(const Eigen::VectorXcd &codeword, const Eigen::VectorXcd &h_1,
                             const Eigen::VectorXcd &h_2)
{
    return std::abs(kernels::dotc(as_span(codeword), as_span(h_1))) +
           std::abs(kernels::dotc(as_span(codeword), as_span(h_2)));
}

std::size_t select_analog_beam(const std::vector<Eigen::VectorXcd> &codebook, const Eigen::VectorXcd &h_1,
                               const Eigen::VectorXcd &h_2)
{
    if (codebook.empty())
        throw std::invalid_argument("Analog codebook is empty.");
    std::size_t best = 0;
    double best_value = analog_beam_objective(codebook[0], h_1, h_2);
    for (std::size_t k = 1; k < codebook.size(); ++k)
    {
        const double value = analog_beam_objective(codebook[k], h_1, h_2);
        if (value > best_value)
        {
            best = k;
            best_value = value;
        }
    }
    return best;
}

Eigen::MatrixXcd analog_matrix(const std::vector<Eigen::VectorXcd> &beams)
{
    if (beams.empty())
        return {};
    Eigen::MatrixXcd b(static_cast<Eigen::Index>(beams.size()), beams.front().size());
    for (std::size_t l = 0; l < beams.size(); ++l)
        b.row(static_cast<Eigen::Index>(l)) = beams[l].adjoint();
    return b;
}

Eigen::MatrixXcd zero_forcing_digital(const Eigen::MatrixXcd &analog, const std::vector<Eigen::VectorXcd> &strong_channels)
{
    const Eigen::Index n_rf = analog.rows();
    const auto n_clusters = static_cast<Eigen::Index>(strong_channels.size());
    if (n_clusters != n_rf)
        throw BeamformingRejected("Zero-forcing needs one strong user per RF chain.");

    Eigen::MatrixXcd h(n_rf, n_clusters);
    for (Eigen::Index l = 0; l < n_clusters; ++l)
        h.col(l) = analog * strong_channels[l];

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    if (!(smallest > 0.0) || sv(0) / smallest > kMaxZfConditionNumber)
        throw BeamformingRejected("Effective strong-user channel matrix is ill-conditioned (condition number " +
                                  std::to_string(smallest > 0.0 ? sv(0) / smallest : INFINITY) + ").");

    // H^H (H H^H)^-1 is the pseudo-inverse; taking it from the SVD avoids
    // squaring the condition number through the Gram matrix.
    Eigen::MatrixXcd v = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
    for (Eigen::Index l = 0; l < n_clusters; ++l)
        v.row(l) /= (v.row(l) * analog).norm();
    return v;
}

EffectiveGains effective_gains(const Eigen::MatrixXcd &analog, const Eigen::MatrixXcd &digital,
                               const std::vector<Eigen::VectorXcd> &strong_channels,
                               const std::vector<Eigen::VectorXcd> &weak_channels, double noise_power_w)
{
    const auto n = static_cast<Eigen::Index>(strong_channels.size());
    EffectiveGains g{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
    for (Eigen::Index l = 0; l < n; ++l)
    {
        const Eigen::RowVectorXcd combiner = digital.row(l) * analog;
        const std::span<const cplx> w{combiner.data(), static_cast<std::size_t>(combiner.size())};
        g.rho(l) = std::norm(kernels::dotu(w, as_span(strong_channels[l]))) / noise_power_w;
        for (Eigen::Index j = 0; j < n; ++j)
            g.alpha(j, l) = std::norm(kernels::dotu(w, as_span(weak_channels[j]))) / noise_power_w;
    }
    return g;
}

BeamformingState design_hybrid_beamforming(const ChannelSet &channels, const ClusterSet &clusters,
                                           const SystemConfig &config)
{
    BeamformingState state;
    state.clusters = clusters;
    const auto n = static_cast<Eigen::Index>(clusters.clusters.size());
    if (n != config.num_rf_chains)
        throw std::invalid_argument("Cluster count must equal the number of RF chains.");

    for (const auto &c : clusters.clusters)
    {
        const auto &u1 = channels.users.at(c.strong_index);
        const auto &u2 = channels.users.at(c.weak_index);
        const auto codebook = build_codebook(u1, u2, config);
        state.analog_beams.push_back(codebook[select_analog_beam(codebook, u1.vector, u2.vector)]);
    }
    state.analog_matrix = analog_matrix(state.analog_beams);

    auto members = [&](bool strong) {
        std::vector<Eigen::VectorXcd> out;
        out.reserve(n);
        for (const auto &c : state.clusters.clusters)
            out.push_back(channels.users[strong ? c.strong_index : c.weak_index].vector);
        return out;
    };

    for (Eigen::Index pass = 0; pass <= n; ++pass)
    {
        const auto strong = members(true);
        const auto weak = members(false);
        state.digital_vectors = zero_forcing_digital(state.analog_matrix, strong);
        const EffectiveGains g = effective_gains(state.analog_matrix, state.digital_vectors, strong, weak,
                                                 channels.noise_power_w);

        bool swapped = false;
        for (Eigen::Index l = 0; l < n; ++l)
        {
            if (g.rho(l) < g.alpha(l, l))
            {
                auto &c = state.clusters.clusters[l];
                std::swap(c.strong_index, c.weak_index);
                swapped = true;
            }
        }
        if (!swapped)
        {
            state.rho = g.rho;
            state.alpha = g.alpha;
            return state;
        }
        if (pass == n)
            break;
        ++state.label_swaps;
    }
    throw BeamformingRejected("Strong/weak labels did not settle after relabeling passes.");
}

} // namespace mmnoma
