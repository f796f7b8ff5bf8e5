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

#include "mmnoma/enhanced_noma.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mmnoma
{

Eigen::VectorXd cluster_interference_metric(const Eigen::MatrixXd &alpha)
{
    if (alpha.rows() != alpha.cols())
        throw std::invalid_argument("alpha must be square.");
    return alpha.rowwise().sum() - alpha.diagonal();
}

std::vector<int> order_clusters(const Eigen::VectorXd &gamma)
{
    std::vector<int> order(static_cast<std::size_t>(gamma.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return gamma(a) > gamma(b); });
    return order;
}

InterferenceStructure enhanced_structure(const Eigen::VectorXd &rho, const Eigen::MatrixXd &alpha,
                                         const std::vector<int> &order)
{
    const Eigen::Index n = rho.size();
    if (static_cast<Eigen::Index>(order.size()) != n)
        throw std::invalid_argument("Decoding order length differs from the cluster count.");

    std::vector<int> position(n, -1);
    for (std::size_t k = 0; k < order.size(); ++k)
    {
        const int c = order[k];
        if (c < 0 || c >= n || position[c] != -1)
            throw std::invalid_argument("Decoding order is not a permutation.");
        position[c] = static_cast<int>(k);
    }

    InterferenceStructure s{rho, alpha, MaskMatrix::Constant(n, n, false), true, 1.0};
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < n; ++l)
            s.mask(j, l) = position[j] > position[l];
    return s;
}

InterferenceStructure enhanced_structure(const Eigen::VectorXd &rho, const Eigen::MatrixXd &alpha)
{
    return enhanced_structure(rho, alpha, order_clusters(cluster_interference_metric(alpha)));
}

} // namespace mmnoma
