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

#ifndef HARQNOMA_SCA_HPP
#define HARQNOMA_SCA_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "harqnoma/convex_solver.hpp"
#include "harqnoma/core_model.hpp"
#include "harqnoma/quadrature.hpp"

namespace harqnoma {

struct ScaParams {
    std::size_t rounds = 1;
    LinkParams weak_link{10.0, 2.0, 0.1};
    LinkParams strong_link{4.0, 2.0, 0.1};
    QosSpec weak_qos{0.2, 0.1};
    QosSpec strong_qos{1.0, 0.1};
    double p_max = 40.0;
    double tolerance = 1e-4;  // stopping gap on the objective, Watt
    int stehfest_m = kDefaultStehfestM;
    int chebyshev_n = kDefaultChebyshevN;
    int max_outer_iterations = 50;

    void validate() const;
    // g_m = m lambda2 ln2 / gamma2, m = 1..M.
    std::vector<double> stehfest_rates() const;
    ScaParams with_rounds(std::size_t t) const;
};

// Log-domain point: y = ln p1, z = ln p2, x(m, t) = -ln(1 + g_m p2_t), and the
// two epigraph variables bounding the retransmission-weighted power tails.
struct CovPoint {
    std::size_t m = 0;
    std::size_t t = 0;
    std::vector<double> x;  // row-major M x T
    std::vector<double> y;
    std::vector<double> z;
    double u1 = 0.0;
    double u2 = 0.0;

    double& x_at(std::size_t mi, std::size_t ti) { return x[mi * t + ti]; }
    double x_at(std::size_t mi, std::size_t ti) const { return x[mi * t + ti]; }

    // Flattened decision vector: x (M*T), y (T), z (T), u1, u2.
    std::vector<double> flatten() const;
    PowerSchedule powers() const;
};

// Variable layout of the flattened vector.
struct CovLayout {
    std::size_t m = 0;
    std::size_t t = 0;

    std::size_t size() const { return m * t + 2 * t + 2; }
    std::size_t x(std::size_t mi, std::size_t ti) const { return mi * t + ti; }
    std::size_t y(std::size_t ti) const { return m * t + ti; }
    std::size_t z(std::size_t ti) const { return m * t + t + ti; }
    std::size_t u1() const { return m * t + 2 * t; }
    std::size_t u2() const { return m * t + 2 * t + 1; }
};

// Throws std::invalid_argument for nonpositive powers or mismatched lengths.
CovPoint cov_from_powers(std::span<const double> p1, std::span<const double> p2,
                         std::span<const double> g);

CovPoint unflatten(std::span<const double> v, std::size_t m, std::size_t t);

inline constexpr double kDefaultProximal = 1.0;

/// Convex model of the power-minimization problem around `point`.
///
/// x(m, t) is tied to z_t by the tangent of the concave map
/// z -> -ln(1 + g_m e^z), one equality per (m, t). The outage constraint and
/// the two power tails enter through the tangent of every exponential in its
/// exponent, i.e. their first-order expansion in (y, z). The Stehfest
/// coefficients alternate in sign and reach 1e4..1e5, so bounding each term
/// separately would overstate the curvature of the sums by orders of
/// magnitude; instead the model carries the proximal terms
///   proximal * sum_t (cosh(y_t - y0_t) + cosh(z_t - z0_t) - 2)
/// (scaled by the objective at the point, and the z part alone on the outage
/// constraint), whose weight the outer loop adapts. Power ratio, cap and the
/// first-round powers stay exact. At the expansion point every model function
/// equals the original one, so the point is feasible for its own model.
cvx::SubproblemSpec build_subproblem(const CovPoint& point, const ScaParams& params,
                                     double proximal = kDefaultProximal);

// Strong-user outage after each prefix of the schedule, clamped: entry t is
// the outage after rounds 1..t+1.
std::vector<double> strong_outage_chain(const ScaParams& params, const PowerSchedule& schedule);

// Objective optimized by the SCA loop: first-round power plus later rounds
// weighted by the strong user's outage after the previous round.
double approx_average_power(const ScaParams& params, const PowerSchedule& schedule);

// Reported objective: average power with both users' closed-form outages.
double full_average_power(const ScaParams& params, const PowerSchedule& schedule);

class InfeasibleInit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SubproblemInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoFeasiblePoint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RoundsInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Empty when the schedule is feasible for the approximated problem, else the
// name of the first violated constraint.
std::optional<std::string> violated_constraint(const ScaParams& params,
                                               const PowerSchedule& schedule);

// 0.7 / 0.3 of P_max per round, or the most reliable admissible split if that
// misses the outage target.
PowerSchedule default_start(const ScaParams& params);

// Largest p2 with p1/p2 slightly above gamma1 under the power cap.
PowerSchedule max_reliability_schedule(const ScaParams& params);

struct ScaTrace {
    std::vector<double> objective;  // entry 0 is the initial point
    std::vector<std::string> status;
    std::vector<double> expansion_violation;  // max constraint value of the expansion point
    std::vector<int> newton_steps;
    std::vector<double> proximal;  // proximal weight of the accepted model
    int rejected = 0;              // candidate steps refused by the descent test
    bool converged = false;
};

struct ScaResult {
    PowerSchedule schedule;
    ScaTrace trace;
    double objective = 0.0;
};

ScaResult sca_solve(const ScaParams& params, const PowerSchedule& init);
ScaResult sca_solve(const ScaParams& params);

struct GridResult {
    PowerSchedule schedule;
    double objective = 0.0;
    std::uint64_t index = 0;  // lexicographic over (p1_1..p1_T, p2_1..p2_T)
};

// Exhaustive search over {P_max i / L : i = 1..L}^{2T}, T <= 2. Throws
// NoFeasiblePoint when nothing on the grid meets the constraints.
GridResult grid_oracle(const ScaParams& params, int levels);

struct MinRoundsResult {
    std::size_t rounds = 0;
    ScaResult solution;
    std::vector<std::pair<std::size_t, bool>> evaluations;  // (T, feasible) in call order
};

// Whether the T-round problem admits a feasible point, decided by phase-1 on
// the subproblem built at the maximum-reliability schedule.
bool rounds_feasible(const ScaParams& params);

// Smallest feasible round count in [1, t_max] by bisection, then its
// optimized schedule. Throws RoundsInfeasible when t_max is infeasible and
// std::logic_error when the evaluations are not monotone.
MinRoundsResult min_rounds(const ScaParams& params, std::size_t t_max);

// Equal-power baseline: one (p1, p2) pair in every round with the given ratio,
// scaled by bisection until the outage constraint is tight. Empty when even
// the largest admissible scale misses the target.
std::optional<PowerSchedule> equal_power_schedule(const ScaParams& params, double ratio);

namespace reference {

GridResult grid_oracle(const ScaParams& params, int levels);

}  // namespace reference

}  // namespace harqnoma

#endif  // HARQNOMA_SCA_HPP
