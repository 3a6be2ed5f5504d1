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
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "harqnoma/outage.hpp"
#include "harqnoma/parallel.hpp"
#include "harqnoma/sca.hpp"
#include "oracles.hpp"

using namespace harqnoma;
using doctest::Approx;

namespace {

// Single-round optimum of the strong user's exponential outage constraint.
double analytic_p2(const ScaParams& p) {
    return p.strong_qos.target_snr /
           (normalized_gain(p.strong_link) * -std::log1p(-p.strong_qos.max_outage));
}

void check_trace(const ScaResult& r) {
    REQUIRE(!r.trace.objective.empty());
    for (std::size_t i = 1; i < r.trace.objective.size(); ++i)
        CHECK(r.trace.objective[i] <= r.trace.objective[i - 1] + 1e-9);
    for (double v : r.trace.expansion_violation) CHECK(v <= 1e-9);
}

}  // namespace

TEST_CASE("change of variables") {
    ScaParams p;
    p.rounds = 2;
    const auto g = p.stehfest_rates();
    REQUIRE(g.size() == 10);
    CHECK(g[0] == Approx(normalized_gain(p.strong_link) * std::log(2.0) / p.strong_qos.target_snr));

    const std::vector<double> ones{1.0, 1.0}, p2{1.0 / g[0], 2.0};
    const auto c = cov_from_powers(ones, p2, g);
    CHECK(c.y[0] == 0.0);
    CHECK(c.y[1] == 0.0);
    CHECK(c.x_at(0, 0) == Approx(-std::log(2.0)).epsilon(1e-14));
    for (std::size_t m = 0; m < 10; ++m)
        for (std::size_t t = 0; t < 2; ++t)
            CHECK(std::abs(c.x_at(m, t) + std::log1p(g[m] * p2[t])) < 1e-12);
    const auto back = c.powers();
    for (std::size_t t = 0; t < 2; ++t) {
        CHECK(std::abs(back.p1[t] - ones[t]) < 1e-12);
        CHECK(std::abs(back.p2[t] - p2[t]) < 1e-12 * p2[t]);
    }
    const auto flat = c.flatten();
    CHECK(flat.size() == 10 * 2 + 2 * 2 + 2);
    const auto again = unflatten(flat, 10, 2);
    CHECK(again.u1 == c.u1);
    CHECK(again.x == c.x);
    const std::vector<double> zero{0.0, 1.0};
    CHECK_THROWS_AS(cov_from_powers(zero, p2, g), std::invalid_argument);
}

TEST_CASE("subproblem shape and tightness at the expansion point") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t T : {1u, 2u, 3u}) {
        ScaParams p;
        p.rounds = T;
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> p1(T), p2(T);
            for (std::size_t t = 0; t < T; ++t) {
                p2[t] = 1.0 + 20.0 * u(rng);
                p1[t] = p2[t] * (0.25 + u(rng));
            }
            const auto point = cov_from_powers(p1, p2, p.stehfest_rates());
            for (double prox : {1e-3, 1.0, 64.0}) {
                const auto spec = build_subproblem(point, p, prox);
                CHECK(spec.variables == 10 * T + 2 * T + 2);
                CHECK(spec.equalities.size() == 10 * T);
                CHECK(spec.objective.convex_certified());
                for (const auto& f : spec.inequalities) CHECK(f.convex_certified());
                const auto x = point.flatten();
                for (const auto& e : spec.equalities) CHECK(std::abs(e.eval(x)) < 1e-12);
                // Model functions equal the originals at the point.
                const double outage = strong_outage_chain(p, PowerSchedule(p1, p2)).back();
                for (std::size_t i = 0; i < spec.inequalities.size(); ++i)
                    if (spec.inequality_names[i] == "strong_outage")
                        CHECK(spec.inequalities[i].value(x) ==
                              Approx(outage / p.strong_qos.max_outage - 1.0).epsilon(1e-9).scale(1.0));
                CHECK(spec.objective.value(x) == Approx(approx_average_power(p, PowerSchedule(p1, p2))).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("property: analytic gradients of the subproblem match finite differences") {
    ScaParams p;
    p.rounds = 2;
    const auto point = cov_from_powers(std::vector<double>{4.0, 3.0}, std::vector<double>{12.0, 9.0},
                                       p.stehfest_rates());
    const auto spec = build_subproblem(point, p, 0.7);
    std::vector<const cvx::ExpSumFunction*> fns{&spec.objective};
    for (const auto& f : spec.inequalities) fns.push_back(&f);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd(0.0, 0.3);
    const auto x0 = point.flatten();
    for (int i = 0; i < 100; ++i) {
        auto x = x0;
        for (auto& v : x) v += nd(rng);
        for (const auto* f : fns) {
            const auto g = f->gradient(x);
            const auto fd = oracle::fd_gradient([&](const std::vector<double>& v) { return f->value(v); }, x, 1e-5);
            for (std::size_t j = 0; j < g.size(); ++j)
                CHECK(std::abs(g[j] - fd[j]) <= 1e-5 * std::max(1.0, std::abs(g[j])));
        }
    }
}

TEST_CASE("single round reaches the analytic optimum") {
    ScaParams p;
    const auto r = sca_solve(p);
    check_trace(r);
    CHECK(r.trace.converged);
    const double p2 = analytic_p2(p);
    CHECK(p2 == Approx(16.14).epsilon(1e-3));
    CHECK(std::abs(r.schedule.p2[0] - p2) <= 0.03 * p2);
    CHECK(std::abs(r.schedule.p1[0] - 0.2 * p2) <= 0.03 * 0.2 * p2);
    CHECK(std::abs(r.objective - 1.2 * p2) <= 0.03 * 1.2 * p2);
}

TEST_CASE("infeasible initial points are named") {
    ScaParams p;
    p.rounds = 2;
    try {
        sca_solve(p, PowerSchedule({1.0, 1.0}, {10.0, 10.0}));
        FAIL("expected InfeasibleInit");
    } catch (const InfeasibleInit& e) {
        CHECK(std::string(e.what()).find("power_ratio[1]") != std::string::npos);
    }
    CHECK_THROWS_AS(sca_solve(p, PowerSchedule({30.0, 1.0}, {20.0, 1.0})), InfeasibleInit);
    CHECK_THROWS_AS(sca_solve(p, PowerSchedule({0.02, 0.02}, {0.01, 0.01})), InfeasibleInit);
    CHECK(violated_constraint(p, PowerSchedule({0.02, 0.02}, {0.01, 0.01})) == std::optional<std::string>("strong_outage"));
}

TEST_CASE("property: traces descend and iterates stay admissible") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int solved = 0;
    while (solved < 12) {
        ScaParams p;
        p.rounds = 1 + static_cast<std::size_t>(solved % 3);
        p.strong_link.distance = 1.0 + 4.0 * u(rng);
        p.strong_qos.max_outage = 0.03 + 0.2 * u(rng);
        p.strong_qos.target_snr = 0.5 + 1.5 * u(rng);
        p.weak_qos.target_snr = 0.1 + 0.4 * u(rng);
        if (violated_constraint(p, max_reliability_schedule(p))) continue;
        const auto r = sca_solve(p);
        check_trace(r);
        const auto& s = r.schedule;
        for (std::size_t t = 0; t < s.rounds(); ++t) {
            CHECK(s.p1[t] >= p.weak_qos.target_snr * s.p2[t] * (1 - 1e-8));
            CHECK(s.total(t) <= p.p_max * (1 + 1e-8));
        }
        CHECK_FALSE(violated_constraint(p, s).has_value());
        ++solved;
    }
}

TEST_CASE("grid oracle") {
    ScaParams p;
    const auto g1 = grid_oracle(p, 60);
    const double step = p.p_max / 60;
    CHECK(std::abs(g1.schedule.p2[0] - analytic_p2(p)) <= step);

    p.rounds = 2;
    set_thread_count(4);
    const auto a = grid_oracle(p, 16);
    const auto b = reference::grid_oracle(p, 16);
    CHECK(a.index == b.index);
    CHECK(a.objective == b.objective);
    set_thread_count(1);
    CHECK(grid_oracle(p, 16).index == a.index);

    ScaParams tight;
    tight.p_max = 0.01;
    tight.strong_qos.max_outage = 1e-9;
    CHECK_THROWS_AS(grid_oracle(tight, 10), NoFeasiblePoint);
    ScaParams three;
    three.rounds = 3;
    CHECK_THROWS_AS(grid_oracle(three, 4), std::invalid_argument);
}

TEST_CASE("two rounds: SCA within 5 percent of the grid optimum") {
    ScaParams p;
    p.rounds = 2;
    const auto r = sca_solve(p);
    check_trace(r);
    const auto g = grid_oracle(p, 60);
    CHECK(r.objective <= 1.05 * g.objective);
    // The grid cannot beat the continuous optimum by more than its resolution.
    CHECK(g.objective >= r.objective - 2 * 2 * p.p_max / 60);
}

TEST_CASE("equal power baseline") {
    ScaParams p;
    p.rounds = 3;
    const auto r = sca_solve(p);
    const auto e = equal_power_schedule(p, r.schedule.ratio(0));
    REQUIRE(e.has_value());
    CHECK_FALSE(violated_constraint(p, *e).has_value());
    for (std::size_t t = 1; t < 3; ++t) CHECK(e->p2[t] == e->p2[0]);
    CHECK(approx_average_power(p, *e) >= r.objective - 1e-6);
    ScaParams tight = p;
    tight.strong_qos.max_outage = 1e-12;
    CHECK_FALSE(equal_power_schedule(tight, 0.25).has_value());
}

TEST_CASE("round minimization") {
    ScaParams loose;
    loose.strong_qos.max_outage = 0.5;
    const auto a = min_rounds(loose, 4);
    CHECK(a.rounds == 1);
    CHECK(a.solution.schedule.rounds() == 1);

    // Between the one-round and two-round outage floors at full power.
    ScaParams p;
    const double l2 = normalized_gain(p.strong_link);
    const double pmax2 = p.p_max / (1.0 + p.weak_qos.target_snr);
    const double floor1 = user2_outage_closed({{pmax2}, l2, 1.0}).value;
    const double floor2 = user2_outage_closed({{pmax2, pmax2}, l2, 1.0}).value;
    REQUIRE(floor2 < floor1);
    p.strong_qos.max_outage = std::sqrt(floor1 * floor2);
    const auto b = min_rounds(p, 4);
    CHECK(b.rounds == 2);
    CHECK_FALSE(violated_constraint(p.with_rounds(2), b.solution.schedule).has_value());
    for (const auto& [t, ok] : b.evaluations) CHECK(ok == (t >= 2));

    ScaParams hard;
    hard.strong_qos.max_outage = 1e-9;
    CHECK_THROWS_AS(min_rounds(hard, 2), RoundsInfeasible);
}
