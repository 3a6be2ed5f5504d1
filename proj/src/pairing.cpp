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

#include "harqnoma/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "harqnoma/rng.hpp"

namespace harqnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScaParams pair_params(const LinkParams& cu, const QosSpec& qos_cu, const QosSpec& qos_eu,
                      double p_pair, const ScaParams& options) {
    ScaParams p = options;
    p.strong_link = cu;
    p.strong_qos = qos_cu;
    p.weak_qos = qos_eu;
    p.p_max = p_pair;
    return p;
}

double cost_of(const std::optional<PowerSchedule>& schedule, const LinkParams& cu,
               const LinkParams& eu, const QosSpec& qos_cu, const QosSpec& qos_eu, double p_pair,
               const ScaParams& options) {
    if (!schedule) return kInf;
    ScaParams p = pair_params(cu, qos_cu, qos_eu, p_pair, options);
    p.weak_link = eu;
    return full_average_power(p, *schedule);
}

LinkParams link_at(double distance, const PairingConfig& config) {
    return LinkParams{distance, config.path_loss_exponent, config.noise_power};
}

double pair_power(const PairingConfig& config, std::size_t k) {
    return config.p_max / static_cast<double>(k);
}

}  // namespace

Placement sample_placement(std::size_t k, double r_c, double r_e, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("sample_placement: K must be >= 1");
    if (!(r_c > 0.0) || !(r_e > r_c))
        throw std::invalid_argument("sample_placement: need 0 < r_c < r_e");
    Placement p;
    p.k = k;
    p.r_c = r_c;
    p.r_e = r_e;
    p.seed = seed;
    std::mt19937_64 engine(seed);
    p.cu_distance.resize(k);
    p.eu_distance.resize(k);
    for (auto& d : p.cu_distance) d = r_c * std::sqrt(uniform_open_closed(engine));
    for (auto& d : p.eu_distance)
        d = std::sqrt(r_c * r_c + uniform_open_closed(engine) * (r_e * r_e - r_c * r_c));
    return p;
}

std::optional<PowerSchedule> pair_schedule(const LinkParams& cu, const QosSpec& qos_cu,
                                           const QosSpec& qos_eu, double p_pair,
                                           const ScaParams& options) {
    const auto p = pair_params(cu, qos_cu, qos_eu, p_pair, options);
    try {
        return sca_solve(p).schedule;
    } catch (const InfeasibleInit&) {
        return std::nullopt;
    } catch (const SubproblemInfeasible&) {
        return std::nullopt;
    }
}

double pair_cost(const LinkParams& cu, const LinkParams& eu, const QosSpec& qos_cu,
                 const QosSpec& qos_eu, double p_pair, const ScaParams& options) {
    if (cu.distance > eu.distance)
        throw std::invalid_argument("pair_cost: the cell-center user must not be farther than the cell-edge user");
    const auto schedule = pair_schedule(cu, qos_cu, qos_eu, p_pair, options);
    return cost_of(schedule, cu, eu, qos_cu, qos_eu, p_pair, options);
}

CostMatrix::CostMatrix(std::size_t n, std::vector<double> values) : k(n), cost(std::move(values)) {
    if (cost.size() != k * k) throw std::invalid_argument("CostMatrix: expected K*K entries");
}

CostMatrix build_cost_matrix(const Placement& placement, const PairingConfig& config) {
    const std::size_t k = placement.k;
    const double p_pair = pair_power(config, k);
    std::vector<std::optional<PowerSchedule>> schedules(k);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < k; ++i)
        schedules[i] = pair_schedule(link_at(placement.cu_distance[i], config), config.cu_qos,
                                     config.eu_qos, p_pair, config.sca);
    std::vector<double> cost(k * k);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t idx = 0; idx < k * k; ++idx) {
        const std::size_t i = idx / k, j = idx % k;
        cost[idx] = cost_of(schedules[i], link_at(placement.cu_distance[i], config),
                            link_at(placement.eu_distance[j], config), config.cu_qos,
                            config.eu_qos, p_pair, config.sca);
    }
    return CostMatrix(k, std::move(cost));
}

namespace reference {

CostMatrix build_cost_matrix(const Placement& placement, const PairingConfig& config) {
    const std::size_t k = placement.k;
    const double p_pair = pair_power(config, k);
    std::vector<double> cost(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            cost[i * k + j] = pair_cost(link_at(placement.cu_distance[i], config),
                                        link_at(placement.eu_distance[j], config), config.cu_qos,
                                        config.eu_qos, p_pair, config.sca);
    return CostMatrix(k, std::move(cost));
}

}  // namespace reference

Preferences build_preferences(const CostMatrix& costs) {
    const std::size_t k = costs.k;
    Preferences p;
    p.cu.resize(k);
    p.eu.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        auto& list = p.cu[i];
        list.resize(k);
        std::iota(list.begin(), list.end(), std::size_t{0});
        std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
            return costs.at(i, a) < costs.at(i, b);
        });
    }
    for (std::size_t j = 0; j < k; ++j) {
        auto& list = p.eu[j];
        list.resize(k);
        std::iota(list.begin(), list.end(), std::size_t{0});
        std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
            return costs.at(a, j) < costs.at(b, j);
        });
    }
    return p;
}

double matching_cost(const std::vector<std::size_t>& assignment, const CostMatrix& costs) {
    double total = 0.0;
    for (std::size_t i = 0; i < assignment.size(); ++i) total += costs.at(i, assignment[i]);
    return total;
}

bool is_bijection(const std::vector<std::size_t>& assignment, std::size_t k) {
    if (assignment.size() != k) return false;
    std::vector<bool> seen(k, false);
    for (std::size_t j : assignment) {
        if (j >= k || seen[j]) return false;
        seen[j] = true;
    }
    return true;
}

MatchingState initial_matching(const Preferences& prefs, const CostMatrix& costs) {
    const std::size_t k = costs.k;
    if (prefs.cu.size() != k) throw std::invalid_argument("initial_matching: size mismatch");
    MatchingState s;
    s.assignment.assign(k, k);
    std::vector<bool> taken(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j : prefs.cu[i]) {
            if (!taken[j]) {
                taken[j] = true;
                s.assignment[i] = j;
                break;
            }
        }
    }
    s.total_cost = matching_cost(s.assignment, costs);
    s.cost_history.push_back(s.total_cost);
    return s;
}

MatchingState swap_phase(MatchingState state, const CostMatrix& costs) {
    const std::size_t k = costs.k;
    if (!is_bijection(state.assignment, k))
        throw std::invalid_argument("swap_phase: assignment is not a bijection");
    auto& a = state.assignment;
    if (state.cost_history.empty()) state.cost_history.push_back(matching_cost(a, costs));
    bool swapped = true;
    while (swapped) {
        swapped = false;
        ++state.scans;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t ip = i + 1; ip < k; ++ip) {
                const double now = costs.at(i, a[i]) + costs.at(ip, a[ip]);
                const double then = costs.at(i, a[ip]) + costs.at(ip, a[i]);
                if (then < now - kSwapThreshold) {
                    std::swap(a[i], a[ip]);
                    ++state.swap_count;
                    state.cost_history.push_back(matching_cost(a, costs));
                    swapped = true;
                }
            }
        }
    }
    state.total_cost = matching_cost(a, costs);
    return state;
}

MatchingState permutation_oracle(const CostMatrix& costs) {
    const std::size_t k = costs.k;
    if (k < 1 || k > 8) throw std::invalid_argument("permutation_oracle: K must be in [1, 8]");
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    MatchingState best;
    best.assignment = perm;
    best.total_cost = matching_cost(perm, costs);
    while (std::next_permutation(perm.begin(), perm.end())) {
        const double c = matching_cost(perm, costs);
        if (c < best.total_cost) {
            best.total_cost = c;
            best.assignment = perm;
        }
    }
    best.cost_history.push_back(best.total_cost);
    return best;
}

}  // namespace harqnoma
