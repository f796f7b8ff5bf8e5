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

#include "mmnoma/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "mmnoma/kernels.hpp"

namespace mmnoma
{

double channel_correlation(const Eigen::VectorXcd &h_i, const Eigen::VectorXcd &h_j, bool conjugate)
{
    if (h_i.size() != h_j.size())
        throw std::invalid_argument("Channel vectors differ in length.");
    const double norms = std::sqrt(kernels::norm2(as_span(h_i)) * kernels::norm2(as_span(h_j)));
    if (!(norms > 0.0))
        throw DegenerateChannelError("Correlation of a zero-norm channel is undefined.");
    const cplx inner = conjugate ? kernels::dotc(as_span(h_i), as_span(h_j)) : kernels::dotu(as_span(h_i), as_span(h_j));
    // Cauchy-Schwarz bounds the ratio by one; clamp the rounding excess.
    return std::min(1.0, std::abs(inner) / norms);
}

double gain_difference(const Eigen::VectorXcd &h_i, const Eigen::VectorXcd &h_j)
{
    return std::abs(std::sqrt(kernels::norm2(as_span(h_i))) - std::sqrt(kernels::norm2(as_span(h_j))));
}

ClusterSet pair_users(const std::vector<UserChannel> &users, int num_clusters, bool conjugate)
{
    const int n = static_cast<int>(users.size());
    if (num_clusters < 1)
        throw std::invalid_argument("At least one cluster is required.");
    if (n < 2 * num_clusters)
        throw std::invalid_argument("User pool is smaller than twice the cluster count.");

    struct Candidate
    {
        int i, j;
        double correlation, gain_difference;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            candidates.push_back({i, j, channel_correlation(users[i].vector, users[j].vector, conjugate),
                                  gain_difference(users[i].vector, users[j].vector)});

    std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
        return std::tuple(-a.correlation, -a.gain_difference, a.i, a.j) <
               std::tuple(-b.correlation, -b.gain_difference, b.i, b.j);
    });

    std::vector<bool> matched(n, false);
    ClusterSet out;
    out.clusters.reserve(num_clusters);
    for (const auto &c : candidates)
    {
        if (static_cast<int>(out.clusters.size()) == num_clusters)
            break;
        if (matched[c.i] || matched[c.j])
            continue;
        matched[c.i] = matched[c.j] = true;

        const bool j_stronger = users[c.j].vector.squaredNorm() > users[c.i].vector.squaredNorm();
        out.clusters.push_back({j_stronger ? c.j : c.i, j_stronger ? c.i : c.j, c.correlation, c.gain_difference});
    }
    return out;
}

} // namespace mmnoma
