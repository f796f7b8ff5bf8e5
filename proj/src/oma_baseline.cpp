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

#include "mmnoma/oma_baseline.hpp"

#include <stdexcept>

namespace mmnoma
{

InterferenceStructure oma_structure(const Eigen::VectorXd &rho, const Eigen::MatrixXd &alpha)
{
    InterferenceStructure s = noma_structure(rho, alpha);
    s.shared_slot = false;
    s.slot_scale = 0.5;
    return s;
}

EEResult oma_ee_solve(const InterferenceStructure &oma, const EEParams &params, const OptimizerOptions &options)
{
    if (oma.shared_slot)
        throw std::invalid_argument("OMA solve expects a time-division structure.");
    return dinkelbach_solve(oma, params, options);
}

} // namespace mmnoma
