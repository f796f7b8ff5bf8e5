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

#include "mmnoma/channel_model.hpp"
#include "mmnoma/clustering.hpp"

namespace mmnoma
{

// The drop cannot be served by the hybrid design (ill-conditioned strong-user
// channel matrix, or strong/weak labels that never settle). Resample it.
class BeamformingRejected : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kMaxZfConditionNumber = 1e12;

// Hybrid combiner for L clusters and the scalar gains the power allocator
// works with. Cluster l's strong user is clusters[l].strong_index.
//
// Row l of analog_matrix is the conjugate of the selected codeword
// analog_beams[l], so (B h)_l = a(theta)^H h.
struct BeamformingState
{
    ClusterSet clusters;
    std::vector<Eigen::VectorXcd> analog_beams;
    Eigen::MatrixXcd analog_matrix;   // N_RF x N_TX
    Eigen::MatrixXcd digital_vectors; // row l is v_l (L x N_RF)
    Eigen::VectorXd rho;              // |v_l B h_{l,1}|^2 / noise
    Eigen::MatrixXd alpha;            // (j, l): |v_l B h_{j,2}|^2 / noise
    int label_swaps = 0;
};

// Steering vectors of every stored path of both users: user 1's F paths, then user 2's.
std::vector<Eigen::VectorXcd> build_codebook(const UserChannel &first, const UserChannel &second,
                                             const SystemConfig &config);

// |f^H h_1| + |f^H h_2|.
double analog_beam_objective(const Eigen::VectorXcd &codeword, const Eigen::VectorXcd &h_1,
                             const Eigen::VectorXcd &h_2);

// Index of the codeword maximizing analog_beam_objective; lowest index wins ties.
std::size_t select_analog_beam(const std::vector<Eigen::VectorXcd> &codebook, const Eigen::VectorXcd &h_1,
                               const Eigen::VectorXcd &h_2);

Eigen::MatrixXcd analog_matrix(const std::vector<Eigen::VectorXcd> &beams);

// Zero-forcing on the effective strong-user channels B h_{l,1}. Returns the
// L x N_RF matrix whose row l is V(l) / |V(l) B|. Throws BeamformingRejected
// when the effective channel matrix is not square or its condition number
// exceeds kMaxZfConditionNumber.
Eigen::MatrixXcd zero_forcing_digital(const Eigen::MatrixXcd &analog, const std::vector<Eigen::VectorXcd> &strong_channels);

struct EffectiveGains
{
    Eigen::VectorXd rho;
    Eigen::MatrixXd alpha;
};

EffectiveGains effective_gains(const Eigen::MatrixXcd &analog, const Eigen::MatrixXcd &digital,
                               const std::vector<Eigen::VectorXcd> &strong_channels,
                               const std::vector<Eigen::VectorXcd> &weak_channels, double noise_power_w);

// Full hybrid design for one drop: analog beam per cluster, zero-forcing
// digital stage, then relabeling of any cluster whose weak user ends up with
// the larger beamformed gain (recomputing the digital stage after each pass,
// at most L passes).
BeamformingState design_hybrid_beamforming(const ChannelSet &channels, const ClusterSet &clusters,
                                           const SystemConfig &config);

} // namespace mmnoma
