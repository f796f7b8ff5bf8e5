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

#include <Eigen/Dense>

#include "mmnoma/ee_optimizer.hpp"

namespace mmnoma
{

// Two equal TDMA slots with the same hybrid combiner: slot 1 carries every
// strong user (interference-free after zero-forcing), slot 2 every weak user
// with full cross-cluster interference. Each user transmits half the time, so
// rates and transmit power are both scaled by 1/2.
InterferenceStructure oma_structure(const Eigen::VectorXd &rho, const Eigen::MatrixXd &alpha);

EEResult oma_ee_solve(const InterferenceStructure &oma, const EEParams &params, const OptimizerOptions &options = {});

} // namespace mmnoma
