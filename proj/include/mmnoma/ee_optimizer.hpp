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

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mmnoma/convex_solver.hpp"

namespace mmnoma
{

using MaskMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Column 0 holds the strong users' powers P_{l,1}, column 1 the weak users'
// P_{l,2}, in watts. Flattened (column-major) it is the optimizer variable
// x = [P_{1,1} .. P_{L,1}, P_{1,2} .. P_{L,2}].
using PowerMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2>;
using RateMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Which received signals interfere with which, for one multiple-access scheme.
///
/// The weak user of cluster l is decoded against noise plus the weak users j
/// with mask(j, l) set. With shared_slot (NOMA), the strong user of cluster l
/// is decoded first and additionally sees its own weak partner and the same
/// masked interferers. Without it (time division), strong users transmit in a
/// separate slot where zero-forcing leaves them interference-free.
///
/// slot_scale multiplies every rate and the transmit-power term of the EE
/// denominator (1 for NOMA, 1/2 for two equal time slots).
struct InterferenceStructure
{
    Eigen::VectorXd rho;
    Eigen::MatrixXd alpha; // (j, l): weak user j's gain at cluster l's combiner
    MaskMatrix mask;
    bool shared_slot = true;
    double slot_scale = 1.0;

    Eigen::Index clusters() const { return rho.size(); }
    void validate() const;
};

// Plain NOMA: every other cluster's weak user interferes.
InterferenceStructure noma_structure(const Eigen::VectorXd &rho, const Eigen::MatrixXd &alpha);

struct EEParams
{
    double amplifier_inefficiency = 1.0; // psi
    double circuit_power_w = 0.0;        // P_C
    double max_tx_power_w = 1.0;         // P_max
    double min_rate_bps_hz = 0.0;        // R_min
};

struct OptimizerOptions
{
    double outer_tolerance = 1e-6; // Dinkelbach stops once epsilon falls to this
    int max_outer_iterations = 50;
    double inner_tolerance = 1e-7; // DC loop stops when the objective gains less
    int max_inner_iterations = 200;
    SolverOptions solver{};
};

struct OuterStep
{
    double lambda = 0.0;  // EE after this step
    double epsilon = 0.0; // subtractive objective value at the step's powers
};

struct EEResult
{
    PowerMatrix powers;
    RateMatrix rates;
    double ee = 0.0; // bit/s/Hz per watt
    std::vector<OuterStep> outer_trace;
    std::vector<int> inner_iterations;
    std::vector<std::vector<double>> inner_objectives; // DC objective trace per outer step
    bool feasible = false;

    double sum_rate() const { return rates.sum(); }
    double total_power() const { return powers.sum(); }
};

class DinkelbachError : public std::runtime_error
{
  public:
    DinkelbachError(const std::string &what, EEResult partial) : std::runtime_error(what), partial(std::move(partial)) {}

    EEResult partial;
};

// Rates per user (Shannon, bit/s/Hz, scaled by slot_scale).
RateMatrix compute_rates(const PowerMatrix &p, const InterferenceStructure &s);

// Single-log per-cluster sum rate: log2(N_{l,1}) - log2(D_{l,2}) for a shared
// slot (the strong user's interference equals the weak user's received power),
// independent of compute_rates' per-user ratios.
Eigen::VectorXd cluster_sum_rates(const PowerMatrix &p, const InterferenceStructure &s);

// Transmit + circuit power in the EE denominator.
double consumed_power(const PowerMatrix &p, const InterferenceStructure &s, const EEParams &params);

double energy_efficiency(const PowerMatrix &p, const InterferenceStructure &s, const EEParams &params);

// Linear QoS constraints, two per cluster (strong user first), in the
// flattened power variable: signal - (2^(R_min / slot_scale) - 1) * (interference + 1) >= 0.
std::vector<AffineRow> qos_rows(const InterferenceStructure &s, double min_rate_bps_hz);

// Strictly feasible start from a max-min-slack linear program, or nullopt when
// its optimum is not positive.
std::optional<PowerMatrix> find_feasible_point(const InterferenceStructure &s, double min_rate_bps_hz,
                                               double max_tx_power_w, const SolverOptions &options = {});

// The subtracted concave part f2 = sum_l slot_scale * log2(D_{l,2}(P)) and its gradient.
double f2_value(const PowerMatrix &p, const InterferenceStructure &s);
PowerMatrix grad_f2(const PowerMatrix &p, const InterferenceStructure &s);

// f1 - f2 for the subtractive subproblem at `lambda` (circuit power omitted).
double dc_objective(double lambda, const PowerMatrix &p, const InterferenceStructure &s, const EEParams &params);

struct InnerResult
{
    PowerMatrix powers;
    std::vector<double> objectives; // dc_objective at p0 then after every convex solve
    int iterations = 0;
};

// Convex-concave procedure from a strictly feasible p0.
InnerResult dc_inner_solve(double lambda, const InterferenceStructure &s, const PowerMatrix &p0,
                           const EEParams &params, const OptimizerOptions &options = {});

// Energy-efficiency maximization: Dinkelbach updates around dc_inner_solve.
EEResult dinkelbach_solve(const InterferenceStructure &s, const EEParams &params, const OptimizerOptions &options = {});

// Sum-rate maximization (the subtractive subproblem at lambda = 0), EE reported at its powers.
EEResult max_se_solve(const InterferenceStructure &s, const EEParams &params, const OptimizerOptions &options = {});

} // namespace mmnoma
