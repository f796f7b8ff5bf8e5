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

#include <vector>

#include <Eigen/Dense>

#include "mmnoma/ee_optimizer.hpp"

namespace mmnoma
{

// Gamma_l = sum_{j != l} alpha(l, j): interference cluster l's weak user puts
// on every other cluster.
Eigen::VectorXd cluster_interference_metric(const Eigen::MatrixXd &alpha);

// Decoding order: clusters sorted by decreasing Gamma, ties by lower index.
// Entry k is the cluster decoded k-th.
std::vector<int> order_clusters(const Eigen::VectorXd &gamma);

// Once a cluster is decoded its weak user is cancelled everywhere, so cluster
// l only sees weak users of clusters decoded after it. Cluster indexing is
// unchanged; the order only shapes the mask.
InterferenceStructure enhanced_structure(const Eigen::VectorXd &rho, const Eigen::MatrixXd &alpha,
                                         const std::vector<int> &order);

// Greedy order from cluster_interference_metric, then enhanced_structure.
InterferenceStructure enhanced_structure(const Eigen::VectorXd &rho, const Eigen::MatrixXd &alpha);

} // namespace mmnoma
