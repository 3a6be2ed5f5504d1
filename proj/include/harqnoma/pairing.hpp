// SPDX-License-Identifier: Apache-2.0
//
// harqnoma: outage analysis and power planning for HARQ-CC NOMA downlinks
// Copyright (C) 2026 The harqnoma authors
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

#ifndef HARQNOMA_PAIRING_HPP
#define HARQNOMA_PAIRING_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "harqnoma/core_model.hpp"
#include "harqnoma/sca.hpp"

namespace harqnoma {

// Cell-center users (CU) are uniform over the disk of radius r_c, cell-edge
// users (EU) uniform over the annulus [r_c, r_e].
struct Placement {
    std::size_t k = 0;
    std::vector<double> cu_distance;
    std::vector<double> eu_distance;
    double r_c = 4.0;
    double r_e = 10.0;
    std::uint64_t seed = 0;
};

// Draws K CU distances and then K EU distances from one std::mt19937_64.
Placement sample_placement(std::size_t k, double r_c, double r_e, std::uint64_t seed);

struct PairingConfig {
    ScaParams sca;  // rounds and numerical settings; links, QoS and P_max are set per pair
    double path_loss_exponent = 2.0;
    double noise_power = 0.1;
    QosSpec cu_qos{1.0, 0.1};
    QosSpec eu_qos{0.2, 0.1};
    double p_max = 40.0;  // shared by all pairs; each pair gets p_max / K
};

// Power schedule the SCA loop picks for a pair; it only depends on the CU
// link because the approximated problem ignores the weak user's outage.
// Empty when the pair cannot meet its targets within p_pair.
std::optional<PowerSchedule> pair_schedule(const LinkParams& cu, const QosSpec& qos_cu,
                                           const QosSpec& qos_eu, double p_pair,
                                           const ScaParams& options);

/// Average power of the pair (cu, eu) sharing one resource block.
///
/// The schedule comes from pair_schedule(); the cost is the average power of
/// that schedule with both users' closed-form outages, so a farther EU makes
/// retransmissions likelier and the pair more expensive. Infeasible pairs cost
/// +infinity. Throws std::invalid_argument when the CU is farther than the EU.
double pair_cost(const LinkParams& cu, const LinkParams& eu, const QosSpec& qos_cu,
                 const QosSpec& qos_eu, double p_pair, const ScaParams& options);

struct CostMatrix {
    std::size_t k = 0;
    std::vector<double> cost;  // row-major, rows are CUs, columns EUs

    CostMatrix() = default;
    CostMatrix(std::size_t n, std::vector<double> values);

    double at(std::size_t cu, std::size_t eu) const { return cost[cu * k + eu]; }
};

CostMatrix build_cost_matrix(const Placement& placement, const PairingConfig& config);

struct Preferences {
    std::vector<std::vector<std::size_t>> cu;  // cu[i]: EUs by ascending cost
    std::vector<std::vector<std::size_t>> eu;  // eu[j]: CUs by ascending cost
};

Preferences build_preferences(const CostMatrix& costs);

struct MatchingState {
    std::vector<std::size_t> assignment;  // CU index -> EU index
    double total_cost = 0.0;
    std::size_t swap_count = 0;
    std::size_t scans = 0;
    std::vector<double> cost_history;  // total cost before any swap, then after each swap
};

double matching_cost(const std::vector<std::size_t>& assignment, const CostMatrix& costs);
bool is_bijection(const std::vector<std::size_t>& assignment, std::size_t k);

// CUs in index order take their best still-unmatched EU.
MatchingState initial_matching(const Preferences& prefs, const CostMatrix& costs);

inline constexpr double kSwapThreshold = 1e-9;

// Swaps partners of CU pairs (i < i') while that lowers the total cost by more
// than kSwapThreshold; stops after a full scan without a swap.
MatchingState swap_phase(MatchingState state, const CostMatrix& costs);

// Minimum-cost assignment by enumerating all K! permutations, K <= 8. Ties go
// to the lexicographically smallest assignment.
MatchingState permutation_oracle(const CostMatrix& costs);

namespace reference {

CostMatrix build_cost_matrix(const Placement& placement, const PairingConfig& config);

}  // namespace reference

}  // namespace harqnoma

#endif  // HARQNOMA_PAIRING_HPP
