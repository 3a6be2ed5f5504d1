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

#include "harqnoma/outage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "harqnoma/parallel.hpp"

namespace harqnoma {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Per-round quadrature: point masses z[n] with weights omega[n] approximating
// the SINR density on (0, beta).
struct RoundRule {
    std::vector<double> z;
    std::vector<double> omega;
};

// Smoothed step Phi(S) ~ P(S <= gamma1) from inverting exp(-s S) and
// integrating over (0, gamma1); coefficient c_{k,m} and rate r_{k,m} per term.
struct StepRule {
    std::vector<double> coeff;
    std::vector<double> rate;

    double operator()(double s) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < coeff.size(); ++i) acc += coeff[i] * std::exp(-rate[i] * s);
        return acc;
    }
};

struct User1Setup {
    bool certain_outage = false;
    std::size_t rounds = 0;
    std::size_t n = 0;
    std::size_t grid = 0;
    std::vector<RoundRule> per_round;
    StepRule step;
};

User1Setup prepare_user1(const User1OutageInput& in) {
    const auto& s = in.schedule;
    s.validate();
    if (!(in.gamma1 > 0.0)) throw std::invalid_argument("user1 outage: gamma1 must be > 0");
    if (!(in.lambda1 > 0.0)) throw std::invalid_argument("user1 outage: lambda1 must be > 0");
    for (std::size_t t = 0; t < s.rounds(); ++t)
        if (!(s.p2[t] > 0.0))
            throw std::invalid_argument("user1 outage: p2 must be > 0 in every round");

    User1Setup setup;
    setup.rounds = s.rounds();
    // Each round's SINR is strictly below beta_t, so the sum cannot reach gamma1.
    if (s.ratio_sum() <= in.gamma1) {
        setup.certain_outage = true;
        return setup;
    }
    const auto nodes = chebyshev_nodes(in.chebyshev_n);
    const auto w = stehfest_weights(in.stehfest_m);
    setup.n = nodes.size();
    const double grid = std::pow(static_cast<double>(setup.n), static_cast<double>(setup.rounds));
    if (grid > kMaxIndexGrid)
        throw CapacityError("user1 outage: index grid N^T = " + std::to_string(grid) +
                            " exceeds 1e7; use Monte Carlo for this many rounds");
    setup.grid = static_cast<std::size_t>(grid);

    setup.per_round.resize(setup.rounds);
    for (std::size_t t = 0; t < setup.rounds; ++t) {
        const double p1 = s.p1[t];
        const double p2 = s.p2[t];
        const double beta = p1 / p2;
        auto& rule = setup.per_round[t];
        rule.z.resize(setup.n);
        rule.omega.resize(setup.n);
        for (std::size_t i = 0; i < setup.n; ++i) {
            const double z = 0.5 * beta * (nodes[i] + 1.0);
            const double margin = p1 - z * p2;  // > 0 on the open support
            const double density =
                p1 / (in.lambda1 * margin * margin) * std::exp(-z / (in.lambda1 * margin));
            rule.z[i] = z;
            rule.omega[i] = 0.5 * beta * nodes.weight(i) * density;
        }
    }

    const double g = in.gamma1;
    setup.step.coeff.reserve(setup.n * static_cast<std::size_t>(w.order()));
    setup.step.rate.reserve(setup.n * static_cast<std::size_t>(w.order()));
    for (std::size_t k = 0; k < setup.n; ++k) {
        const double zk = 0.5 * g * (1.0 + nodes[k]);
        const double outer = 0.5 * g * nodes.weight(k) * std::numbers::ln2 / zk;
        for (int m = 1; m <= w.order(); ++m) {
            setup.step.coeff.push_back(outer * w.w(m));
            setup.step.rate.push_back(m * std::numbers::ln2 / zk);
        }
    }
    return setup;
}

// Contribution of grid indices [begin, end), decoded as base-N digits with
// round 0 as the most significant digit.
double grid_block(const User1Setup& setup, std::size_t begin, std::size_t end) {
    std::vector<std::size_t> digit(setup.rounds);
    std::size_t rem = begin;
    for (std::size_t t = setup.rounds; t-- > 0;) {
        digit[t] = rem % setup.n;
        rem /= setup.n;
    }
    double acc = 0.0;
    for (std::size_t idx = begin; idx < end; ++idx) {
        double weight = 1.0;
        double sum = 0.0;
        for (std::size_t t = 0; t < setup.rounds; ++t) {
            weight *= setup.per_round[t].omega[digit[t]];
            sum += setup.per_round[t].z[digit[t]];
        }
        if (weight != 0.0) acc += weight * setup.step(sum);
        for (std::size_t t = setup.rounds; t-- > 0;) {
            if (++digit[t] < setup.n) break;
            digit[t] = 0;
        }
    }
    return acc;
}

}  // namespace

double user1_outage_exact_single_round(double p1, double p2, double lambda1, double gamma1) {
    if (gamma1 <= 0.0) return 0.0;
    if (gamma1 * p2 >= p1) return 1.0;
    return -std::expm1(-gamma1 / ((p1 - gamma1 * p2) * lambda1));
}

OutageValue user1_outage_closed(const User1OutageInput& in) {
    const auto setup = prepare_user1(in);
    if (setup.certain_outage) return {1.0, 1.0};

    const std::size_t chunks = (setup.grid + kReductionChunk - 1) / kReductionChunk;
    std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = c * kReductionChunk;
        const std::size_t end = std::min(setup.grid, begin + kReductionChunk);
        partial[c] = grid_block(setup, begin, end);
    }
    const double raw = pairwise_sum(partial);
    return {clamp01(raw), raw};
}

namespace reference {

OutageValue user1_outage_closed(const User1OutageInput& in) {
    const auto setup = prepare_user1(in);
    if (setup.certain_outage) return {1.0, 1.0};
    const double raw = grid_block(setup, 0, setup.grid);
    return {clamp01(raw), raw};
}

}  // namespace reference

OutageValue user2_outage_closed(const User2OutageInput& in) {
    if (in.p2.empty()) throw std::invalid_argument("user2 outage: empty schedule");
    if (!(in.lambda2 > 0.0)) throw std::invalid_argument("user2 outage: lambda2 must be > 0");
    if (!(in.gamma2 > 0.0)) throw std::invalid_argument("user2 outage: gamma2 must be > 0");
    for (double p : in.p2)
        if (!(p > 0.0)) throw std::invalid_argument("user2 outage: p2 must be > 0 in every round");
    const auto w = stehfest_weights(in.stehfest_m);
    double raw = 0.0;
    for (int m = 1; m <= w.order(); ++m) {
        const double g = m * in.lambda2 * std::numbers::ln2 / in.gamma2;
        double prod = 1.0;
        for (double p : in.p2) prod /= 1.0 + g * p;
        raw += w.w(m) / m * prod;
    }
    return {clamp01(raw), raw};
}

double lemma1_threshold(double gamma1, double gamma2) {
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
        throw std::invalid_argument("lemma1_threshold: targets must be > 0");
    return (gamma1 + gamma1 * gamma2) / gamma2;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("log_grid: bad range");
    std::vector<double> out(n);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

DiversityEstimate diversity_slope(const std::function<double(double)>& outage,
                                  std::span<const double> rho_grid) {
    const std::size_t n = rho_grid.size();
    if (n < 4) throw std::invalid_argument("diversity_slope: need at least 4 grid points");
    for (double r : rho_grid)
        if (!(r > 0.0)) throw std::invalid_argument("diversity_slope: rho must be > 0");
    const double step = std::log10(rho_grid[1] / rho_grid[0]);
    if (!(step > 0.0)) throw std::invalid_argument("diversity_slope: grid must increase");
    for (std::size_t i = 1; i < n; ++i) {
        const double s = std::log10(rho_grid[i] / rho_grid[i - 1]);
        if (std::abs(s - step) > 1e-6 * step)
            throw std::invalid_argument("diversity_slope: grid is not logarithmically spaced");
    }

    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = outage(rho_grid[i]);
        if (!(p > 1e-12 && p < 1.0))
            throw std::domain_error("diversity_slope: outage " + std::to_string(p) +
                                    " at rho = " + std::to_string(rho_grid[i]) +
                                    " is outside (1e-12, 1)");
        xs[i] = std::log10(rho_grid[i]);
        ys[i] = std::log10(p);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    DiversityEstimate est;
    est.slope = sxy / sxx;
    est.snr_range = {rho_grid.front(), rho_grid.back()};
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (my + est.slope * (xs[i] - mx));
        ss += r * r;
    }
    est.fit_residual = std::sqrt(ss / static_cast<double>(n));
    return est;
}

}  // namespace harqnoma
