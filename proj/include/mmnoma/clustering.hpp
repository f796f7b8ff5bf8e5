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

#include "mmnoma/channel_model.hpp"

namespace mmnoma
{

// Raised for an all-zero channel where a direction is required.
class DegenerateChannelError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

struct Cluster
{
    int strong_index = 0;
    int weak_index = 0;
    double correlation = 0.0;
    double gain_difference = 0.0;
};

struct ClusterSet
{
    std::vector<Cluster> clusters;
};

// |h_i h_j| / (|h_i| |h_j|), with h_i conjugated when `conjugate` is set.
double channel_correlation(const Eigen::VectorXcd &h_i, const Eigen::VectorXcd &h_j, bool conjugate = true);

double gain_difference(const Eigen::VectorXcd &h_i, const Eigen::VectorXcd &h_j);

/// Greedy matching of the pool into `num_clusters` two-user clusters.
///
/// Candidate pairs are taken in order of decreasing correlation; equal
/// correlations prefer the larger gain difference, then the lower index pair.
/// A pair is accepted when neither user is already matched. The larger-norm
/// member of each pair is labeled strong (lower index on equal norms).
/// Throws std::invalid_argument when the pool holds fewer than 2 * num_clusters users.
ClusterSet pair_users(const std::vector<UserChannel> &users, int num_clusters, bool conjugate = true);

} // namespace mmnoma
