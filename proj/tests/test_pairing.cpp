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

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "harqnoma/pairing.hpp"
#include "harqnoma/parallel.hpp"
#include "oracles.hpp"

using namespace harqnoma;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CostMatrix random_costs(std::size_t k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(1.0, 10.0);
    std::vector<double> c(k * k);
    for (auto& v : c) v = u(rng);
    return CostMatrix(k, c);
}

}  // namespace

TEST_CASE("placement") {
    const auto p = sample_placement(1000, 4.0, 10.0, 9);
    double mean = 0.0;
    for (std::size_t i = 0; i < p.k; ++i) {
        CHECK(p.cu_distance[i] <= 4.0);
        CHECK(p.eu_distance[i] >= 4.0);
        CHECK(p.eu_distance[i] <= 10.0);
        mean += p.cu_distance[i];
    }
    mean /= 1000.0;
    CHECK(std::abs(mean - 8.0 / 3.0) <= 0.02 * 8.0 / 3.0);
    const auto q = sample_placement(1000, 4.0, 10.0, 9);
    CHECK(p.cu_distance == q.cu_distance);
    CHECK(p.eu_distance == q.eu_distance);
    CHECK(sample_placement(5, 4.0, 10.0, 10).cu_distance != q.cu_distance);
    CHECK_THROWS_AS(sample_placement(0, 4.0, 10.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_placement(3, 5.0, 4.0, 1), std::invalid_argument);
}

TEST_CASE("pair cost") {
    ScaParams opts;
    opts.rounds = 3;
    const LinkParams cu{2.0, 2.0, 0.1};
    const QosSpec qcu{1.0, 0.1}, qeu{0.2, 0.1};
    const double a = pair_cost(cu, {7.0, 2.0, 0.1}, qcu, qeu, 10.0, opts);
    const double b = pair_cost(cu, {7.0, 2.0, 0.1}, qcu, qeu, 10.0, opts);
    CHECK(a == b);
    CHECK(std::isfinite(a));
    CHECK(a > 0.0);
    CHECK(a < 10.0 * 3);
    double prev = 0.0;
    for (double d = 4.0; d <= 10.0; d += 1.0) {
        const double c = pair_cost(cu, {d, 2.0, 0.1}, qcu, qeu, 10.0, opts);
        CHECK(c >= prev - 1e-12);
        prev = c;
    }
    CHECK(pair_cost({9.5, 2.0, 0.1}, {10.0, 2.0, 0.1}, {1.0, 1e-6}, qeu, 0.05, opts) == kInf);
    CHECK_THROWS_AS(pair_cost({8.0, 2.0, 0.1}, {5.0, 2.0, 0.1}, qcu, qeu, 10.0, opts), std::invalid_argument);
}

TEST_CASE("averaged power grows with the weak user's distance for a fixed schedule") {
    ScaParams p;
    p.rounds = 3;
    const PowerSchedule s({12.0, 10.0, 10.0}, {4.0, 3.0, 3.0});
    double prev = 0.0;
    for (double d = 3.0; d <= 12.0; d += 1.5) {
        p.weak_link.distance = d;
        const double v = full_average_power(p, s);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("cost matrix") {
    PairingConfig cfg;
    cfg.sca.rounds = 2;
    const auto pl = sample_placement(3, 4.0, 10.0, 5);
    set_thread_count(4);
    const auto a = build_cost_matrix(pl, cfg);
    const auto b = reference::build_cost_matrix(pl, cfg);
    CHECK(a.cost == b.cost);
    for (double v : a.cost) CHECK(v > 0.0);
    CHECK_THROWS_AS(CostMatrix(2, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("preferences") {
    const auto flat = build_preferences(CostMatrix(3, std::vector<double>(9, 1.0)));
    CHECK(flat.cu[1] == std::vector<std::size_t>{0, 1, 2});
    const auto two = build_preferences(CostMatrix(2, {1.0, 2.0, 3.0, 0.5}));
    CHECK(two.cu[0].front() == 0);
    CHECK(two.cu[1].front() == 1);
    CHECK(two.eu[0].front() == 0);
    CHECK(two.eu[1].front() == 1);
    const auto inf = build_preferences(CostMatrix(3, {kInf, 1.0, 2.0, 1.0, kInf, 0.5, 1, 2, 3}));
    CHECK(inf.cu[0].back() == 0);
    CHECK(inf.cu[1].back() == 1);
    CHECK(inf.eu[0].back() == 0);
}

TEST_CASE("initial matching") {
    const CostMatrix one(1, {3.0});
    const auto m1 = initial_matching(build_preferences(one), one);
    CHECK(m1.assignment == std::vector<std::size_t>{0});
    CHECK(m1.total_cost == 3.0);

    const CostMatrix distinct(2, {1.0, 5.0, 5.0, 1.0});
    CHECK(initial_matching(build_preferences(distinct), distinct).assignment == std::vector<std::size_t>{0, 1});

    const CostMatrix conflict(2, {1.0, 2.0, 1.0, 3.0});
    CHECK(initial_matching(build_preferences(conflict), conflict).assignment == std::vector<std::size_t>{0, 1});
    const CostMatrix conflict2(3, {2.0, 1.0, 3.0, 5.0, 1.0, 2.0, 1.0, 1.0, 1.0});
    const auto m3 = initial_matching(build_preferences(conflict2), conflict2);
    CHECK(m3.assignment == std::vector<std::size_t>{1, 2, 0});
    CHECK(is_bijection(m3.assignment, 3));
}

TEST_CASE("swap phase") {
    const CostMatrix opt(2, {1.0, 2.0, 2.0, 1.0});
    MatchingState s0;
    s0.assignment = {0, 1};
    s0.total_cost = matching_cost(s0.assignment, opt);
    CHECK(swap_phase(s0, opt).swap_count == 0);

    const CostMatrix anti(2, {2.0, 1.0, 1.0, 2.0});
    s0.total_cost = matching_cost(s0.assignment, anti);
    const auto s1 = swap_phase(s0, anti);
    CHECK(s1.swap_count == 1);
    CHECK(s1.assignment == std::vector<std::size_t>{1, 0});
    CHECK(s1.total_cost == 2.0);

    // Gains at or below the threshold are not taken.
    const CostMatrix tiny(2, {1.0, 1.0, 1.0 - 5e-10, 1.0});
    s0.total_cost = matching_cost(s0.assignment, tiny);
    CHECK(swap_phase(s0, tiny).swap_count == 0);
}

TEST_CASE("property: swap phase descends to a two-swap-stable matching") {
    std::mt19937_64 rng(41);
    for (int inst = 0; inst < 60; ++inst) {
        const std::size_t k = 2 + static_cast<std::size_t>(inst % 6);
        const auto costs = random_costs(k, rng);
        const auto init = initial_matching(build_preferences(costs), costs);
        const auto fin = swap_phase(init, costs);
        CHECK(is_bijection(fin.assignment, k));
        CHECK(fin.total_cost <= init.total_cost);
        CHECK(fin.total_cost == Approx(matching_cost(fin.assignment, costs)).epsilon(1e-12));
        CHECK(fin.scans <= k * k * k);
        REQUIRE(fin.cost_history.size() == fin.swap_count + 1);
        for (std::size_t i = 1; i < fin.cost_history.size(); ++i)
            CHECK(fin.cost_history[i] < fin.cost_history[i - 1] - kSwapThreshold);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                const auto a = fin.assignment;
                const double now = costs.at(i, a[i]) + costs.at(j, a[j]);
                const double swapped = costs.at(i, a[j]) + costs.at(j, a[i]);
                CHECK(swapped >= now - kSwapThreshold);
            }
        if (k <= 8) CHECK(fin.total_cost >= permutation_oracle(costs).total_cost - 1e-12);
    }
}

TEST_CASE("permutation oracle") {
    const CostMatrix one(1, {4.0});
    CHECK(permutation_oracle(one).assignment == std::vector<std::size_t>{0});
    std::mt19937_64 rng(43);
    for (int inst = 0; inst < 30; ++inst) {
        const std::size_t k = 1 + static_cast<std::size_t>(inst % 7);
        const auto costs = random_costs(k, rng);
        double best = 0.0;
        const auto ref = oracle::heap_assignment(costs.cost, k, &best);
        const auto got = permutation_oracle(costs);
        CHECK(got.total_cost == Approx(best).epsilon(1e-12));
        CHECK(got.assignment == ref);
    }
    // Ties resolve to the lexicographically smallest assignment.
    const CostMatrix flat(3, std::vector<double>(9, 1.0));
    CHECK(permutation_oracle(flat).assignment == std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS_AS(permutation_oracle(CostMatrix(9, std::vector<double>(81, 1.0))), std::invalid_argument);
}

TEST_CASE("matching on sampled placements stays near the exhaustive optimum") {
    PairingConfig cfg;
    cfg.sca.rounds = 2;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto pl = sample_placement(4, 4.0, 10.0, seed);
        const auto costs = build_cost_matrix(pl, cfg);
        const auto fin = swap_phase(initial_matching(build_preferences(costs), costs), costs);
        CHECK(fin.total_cost <= 1.03 * permutation_oracle(costs).total_cost);
    }
}
