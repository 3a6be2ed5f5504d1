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

#ifndef HARQNOMA_OUTAGE_HPP
#define HARQNOMA_OUTAGE_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "harqnoma/core_model.hpp"
#include "harqnoma/quadrature.hpp"

namespace harqnoma {

// Result of a closed-form outage evaluation: `value` is clamped to [0, 1],
// `raw` is the unclamped quadrature output kept for diagnostics.
struct OutageValue {
    double value = 0.0;
    double raw = 0.0;
};

// Thrown when the weak-user index grid N^T would exceed kMaxIndexGrid.
// Callers should fall back to Monte Carlo.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kMaxIndexGrid = 1e7;

struct User1OutageInput {
    PowerSchedule schedule;  // every p2 must be > 0
    double lambda1 = 1.0;
    double gamma1 = 1.0;
    int chebyshev_n = kDefaultChebyshevN;
    int stehfest_m = kDefaultStehfestM;
};

struct User2OutageInput {
    std::vector<double> p2;  // every entry > 0
    double lambda2 = 1.0;
    double gamma2 = 1.0;
    int stehfest_m = kDefaultStehfestM;
};

// Exact single-round weak-user outage: 1 when gamma1 >= p1/p2, otherwise
// 1 - exp(-gamma1 / ((p1 - gamma1 p2) lambda1)).
double user1_outage_exact_single_round(double p1, double p2, double lambda1, double gamma1);

/// Weak-user outage after T combined rounds.
///
/// Each per-round SINR density is pushed through a Gauss-Chebyshev rule on
/// its support (0, beta_t), which turns the Laplace transform of the combined
/// SINR into a sum over the full index grid (n_1, ..., n_T) of weighted
/// exponentials exp(-s * S), S = sum_t beta_t (a_{n_t} + 1) / 2. Every grid
/// term is inverted with Gaver-Stehfest and integrated over (0, gamma1) with a
/// second Chebyshev rule. The grid is partitioned into fixed-size chunks
/// summed pairwise, so the result does not depend on the OpenMP thread count.
///
/// Returns exactly 1 when sum_t beta_t <= gamma1. Throws CapacityError when
/// N^T > 1e7 and std::invalid_argument for p2 <= 0 or gamma1 <= 0.
OutageValue user1_outage_closed(const User1OutageInput& in);

// Strong-user outage of the accumulated SNR:
//   clamp(sum_m (w_m / m) prod_t 1 / (1 + g_m p2_t), 0, 1),  g_m = m lambda2 ln2 / gamma2.
OutageValue user2_outage_closed(const User2OutageInput& in);

// Exact CDF at x of a sum of independent exponentials with the given rates.
// Rates closer than 1e-6 (relative) are merged into one Erlang block.
double hypoexp_cdf(std::span<const double> rates, double x);

// Minimum p1/p2 for which the single-round joint SIC outage equals the
// marginal SNR outage of the strong user: (gamma1 + gamma1 gamma2) / gamma2.
double lemma1_threshold(double gamma1, double gamma2);

struct DiversityEstimate {
    double slope = 0.0;  // d log10(P) / d log10(rho); the diversity order is -slope
    std::pair<double, double> snr_range{0.0, 0.0};
    double fit_residual = 0.0;  // RMS residual of the log-log fit

    double order() const { return -slope; }
};

// Least-squares slope of log10(outage(rho)) against log10(rho). The grid must
// be logarithmically spaced with at least 4 points and every outage value
// must lie in (1e-12, 1).
DiversityEstimate diversity_slope(const std::function<double(double)>& outage,
                                  std::span<const double> rho_grid);

// n logarithmically spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

namespace reference {

// Straight nested-loop evaluation of user1_outage_closed, single threaded.
OutageValue user1_outage_closed(const User1OutageInput& in);

}  // namespace reference

}  // namespace harqnoma

#endif  // HARQNOMA_OUTAGE_HPP
