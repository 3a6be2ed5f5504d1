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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "harqnoma/monte_carlo.hpp"
#include "harqnoma/outage.hpp"
#include "harqnoma/pairing.hpp"
#include "harqnoma/quadrature.hpp"
#include "harqnoma/sca.hpp"

using namespace harqnoma;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

bool report(int id, const char* what, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = budget_s <= 0.0 || secs < budget_s;
    const bool ok = o.pass && in_time;
    std::printf("%s criterion %d (%s): %s; %.2f s%s\n", ok ? "PASS" : "FAIL", id, what, o.detail.c_str(), secs,
                in_time ? "" : " over budget");
    std::fflush(stdout);
    return ok;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Paper-scale two-user scenario.
ScaParams base_params(std::size_t rounds, double delta2) {
    ScaParams p;
    p.rounds = rounds;
    p.weak_link = {10.0, 2.0, 0.1};
    p.strong_link = {4.0, 2.0, 0.1};
    p.weak_qos = {0.2, 0.1};
    p.strong_qos = {1.0, delta2};
    p.p_max = 40.0;
    return p;
}

Outcome quadrature_exactness() {
    double worst_sum = 0.0;
    for (int m : {6, 8, 10}) {
        const auto w = stehfest_weights(m);
        double s0 = 0.0, s1 = 0.0;
        for (int k = 1; k <= m; ++k) {
            s0 += w.w(k);
            s1 += w.w(k) / k;
        }
        worst_sum = std::max({worst_sum, std::abs(s0), std::abs(s1 - 1.0)});
    }
    const auto w10 = stehfest_weights(10);
    double worst_rel = 0.0;
    for (int i = 0; i <= 250; ++i) {
        const double x = 0.5 + 2.5 * i / 250.0;
        const double v = stehfest_invert([](double s) { return 1.0 / (s + 1.0); }, x, w10);
        worst_rel = std::max(worst_rel, std::abs(v - std::exp(-x)) / std::exp(-x));
    }
    return {worst_sum <= 1e-9 && worst_rel <= 1e-4,
            fmt("weight identities off by %.2e (<= 1e-9), e^-x inversion rel err %.2e (<= 1e-4)", worst_sum, worst_rel)};
}

Outcome strong_closed_form() {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double l2 = normalized_gain({4.0, 2.0, 0.1});
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t T = 1 + static_cast<std::size_t>(i % 3);
        std::vector<double> p2(T), rates(T);
        for (std::size_t t = 0; t < T; ++t) {
            p2[t] = 0.5 + 19.5 * u(rng);
            rates[t] = 1.0 / (p2[t] * l2);
        }
        const double g2 = 0.1 + 4.9 * u(rng);
        worst = std::max(worst, std::abs(user2_outage_closed({p2, l2, g2}).value - hypoexp_cdf(rates, g2)));
    }
    return {worst <= 1e-2, fmt("max abs error %.3e over 50 schedules (<= 1e-2)", worst)};
}

Outcome lemma_equality() {
    const double l2 = normalized_gain({4.0, 2.0, 0.1});
    const double p2 = 10.0, p1 = 1.5 * lemma1_threshold(0.2, 1.0) * p2;
    const auto mc = simulate_user2_outage(PowerSchedule({p1}, {p2}), l2, 0.2, 1.0, 1'000'000, 3);
    const double exact = -std::expm1(-1.0 / (p2 * l2));
    const double dev = std::abs(mc.estimate - exact);
    return {dev <= 3.0 * mc.std_error,
            fmt("MC %.5f vs exact %.5f, |diff| = %.2f stderr (<= 3)", mc.estimate, exact, dev / mc.std_error)};
}

Outcome weak_closed_form() {
    const double l1 = normalized_gain({10.0, 2.0, 0.1});
    const std::vector<PowerSchedule> cases{
        PowerSchedule({6.0}, {2.0}),           PowerSchedule({10.0}, {4.0}),
        PowerSchedule({3.0}, {1.0}),           PowerSchedule({20.0}, {10.0}),
        PowerSchedule({6.0, 6.0}, {2.0, 2.0}), PowerSchedule({10.0, 8.0}, {4.0, 4.0}),
        PowerSchedule({3.0, 4.0}, {1.5, 1.0}), PowerSchedule({15.0, 20.0}, {8.0, 10.0}),
    };
    double worst = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& s = cases[i];
        if (s.ratio_sum() < 1.5 * 0.2) continue;
        const auto mc = simulate_user1_outage(s, l1, 0.2, 1'000'000, 40 + i);
        if (mc.estimate < 1e-3) continue;
        const double closed = user1_outage_closed({s, l1, 0.2, 30, 10}).value;
        worst = std::max(worst, std::abs(closed - mc.estimate) / mc.estimate);
        ++used;
    }
    return {used >= 4 && worst <= 0.15, fmt("max relative error %.3f over %.0f schedules (<= 0.15)", worst, used)};
}

Outcome diversity() {
    const auto grid = log_grid(1e2, 1e4, 9);
    const double l1 = normalized_gain({10.0, 2.0, 0.1}), l2 = normalized_gain({4.0, 2.0, 0.1});
    bool ok = true;
    std::string detail;
    for (std::size_t T = 1; T <= 3; ++T) {
        std::vector<double> base(T);
        for (std::size_t t = 0; t < T; ++t) base[t] = 0.01 * (1.0 + 0.5 * static_cast<double>(t));
        const auto d = diversity_slope(
            [&](double rho) {
                auto p = base;
                for (auto& v : p) v *= rho;
                return user2_outage_closed({p, l2, 1.0}).value;
            },
            grid);
        ok = ok && std::abs(d.order() - static_cast<double>(T)) <= 0.3;
        detail += fmt("user2 T=%.0f: %.3f; ", static_cast<double>(T), d.order());
    }
    for (std::size_t T = 1; T <= 2; ++T) {
        const PowerSchedule s = PowerSchedule::uniform(T, 0.03, 0.01);
        const auto d = diversity_slope(
            [&](double rho) { return user1_outage_closed({s.scaled(rho), l1, 0.2}).value; }, grid);
        ok = ok && std::abs(d.order() - static_cast<double>(T)) <= 0.4;
        detail += fmt("user1 T=%.0f: %.3f; ", static_cast<double>(T), d.order());
    }
    detail += "tolerances 0.3 / 0.4";
    return {ok, detail};
}

Outcome sca_correctness() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int instances = 0;
    double worst_rise = 0.0;
    while (instances < 20) {
        ScaParams p = base_params(1 + static_cast<std::size_t>(instances % 3), 0.03 + 0.2 * u(rng));
        p.strong_link.distance = 1.0 + 4.0 * u(rng);
        p.strong_qos.target_snr = 0.5 + 1.5 * u(rng);
        p.weak_qos.target_snr = 0.1 + 0.4 * u(rng);
        if (violated_constraint(p, max_reliability_schedule(p))) continue;
        const auto r = sca_solve(p);
        for (std::size_t i = 1; i < r.trace.objective.size(); ++i)
            worst_rise = std::max(worst_rise, r.trace.objective[i] - r.trace.objective[i - 1]);
        ++instances;
    }
    const bool a = worst_rise <= 1e-9;

    const auto p1 = base_params(1, 0.1);
    const auto r1 = sca_solve(p1);
    const double target = 1.0 / (normalized_gain(p1.strong_link) * -std::log1p(-0.1));
    const double rel = std::abs(r1.schedule.p2[0] - target) / target;
    const bool b = rel <= 0.03;

    const auto p2 = base_params(2, 0.1);
    const auto r2 = sca_solve(p2);
    const auto g = grid_oracle(p2, 60);
    const bool c = r2.objective <= 1.05 * g.objective;
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "(a) max trace rise %.1e over 20 instances (<= 1e-9) %s; (b) p2 %.4f vs %.4f, rel %.4f (<= 0.03) %s; "
                  "(c) SCA %.4f vs grid %.4f, ratio %.4f (<= 1.05) %s",
                  worst_rise, a ? "ok" : "FAIL", r1.schedule.p2[0], target, rel, b ? "ok" : "FAIL", r2.objective,
                  g.objective, r2.objective / g.objective, c ? "ok" : "FAIL");
    return {a && b && c, buf};
}

Outcome trends() {
    std::string detail = "delta sweep at T=3:";
    bool ok = true;
    double prev = INFINITY;
    auto epa_ok = [&](const ScaParams& p, const ScaResult& r) {
        const auto e = equal_power_schedule(p, r.schedule.ratio(0));
        return e && approx_average_power(p, *e) >= r.objective - 1e-6;
    };
    for (double d : {0.01, 0.05, 0.1}) {
        const auto p = base_params(3, d);
        const auto r = sca_solve(p);
        ok = ok && r.objective < prev && epa_ok(p, r);
        prev = r.objective;
        detail += fmt(" %.4f", r.objective);
    }
    detail += "; T sweep at delta=0.1:";
    prev = INFINITY;
    for (std::size_t T = 1; T <= 3; ++T) {
        const auto p = base_params(T, 0.1);
        const auto r = sca_solve(p);
        ok = ok && r.objective <= prev && epa_ok(p, r);
        prev = r.objective;
        detail += fmt(" %.4f", r.objective);
    }
    detail += "; EPA >= SCA everywhere";
    return {ok, detail};
}

Outcome matching() {
    PairingConfig cfg;
    cfg.sca = base_params(2, 0.1);
    cfg.cu_qos = {1.0, 0.1};
    cfg.eu_qos = {0.2, 0.1};
    cfg.p_max = 40.0;
    const std::size_t k = 4;
    double worst = 0.0;
    std::size_t max_swaps = 0;
    for (std::uint64_t r = 0; r < 20; ++r) {
        const auto pl = sample_placement(k, 4.0, 10.0, 1000 + r);
        const auto costs = build_cost_matrix(pl, cfg);
        const auto fin = swap_phase(initial_matching(build_preferences(costs), costs), costs);
        const double best = permutation_oracle(costs).total_cost;
        worst = std::max(worst, fin.total_cost / best);
        max_swaps = std::max(max_swaps, fin.swap_count);
    }
    return {worst <= 1.03 && max_swaps < k * k * k,
            fmt("worst swap/oracle ratio %.5f (<= 1.03), max swaps %.0f (< 64)", worst, static_cast<double>(max_swaps))};
}

bool run_capture(const std::string& cmd, std::string& out) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return false;
    char buf[4096];
    std::size_t n;
    out.clear();
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    return pclose(pipe) == 0;
}

Outcome determinism() {
    const std::string cli = HARQNOMA_CLI_PATH;
    const std::string dir = HARQNOMA_CONFIG_DIR;
    bool ok = true;
    std::string detail;
    for (const char* cmd : {"outage", "power", "pair", "rounds"}) {
        const std::string base = "'" + cli + "' " + cmd + " --config '" + dir + "/" + cmd + ".ini' --seed 99";
        std::string a, b, c;
        const bool ran = run_capture(base + " --threads 1", a) && run_capture(base + " --threads 1", b) &&
                         run_capture(base + " --threads 4", c);
        const bool same = ran && !a.empty() && a == b && a == c;
        ok = ok && same;
        detail += std::string(cmd) + (same ? " identical; " : " DIFFERS; ");
    }
    detail += "2 runs at 1 thread + 1 run at 4 threads each";
    return {ok, detail};
}

}  // namespace

int main() {
    int failures = 0;
    failures += !report(1, "quadrature exactness", 1.0, quadrature_exactness);
    failures += !report(2, "strong-user closed form vs hypoexponential", 5.0, strong_closed_form);
    failures += !report(3, "single-round joint outage equality", 10.0, lemma_equality);
    failures += !report(4, "weak-user closed form vs Monte Carlo", 60.0, weak_closed_form);
    failures += !report(5, "diversity order", 30.0, diversity);
    failures += !report(6, "SCA correctness", 120.0, sca_correctness);
    failures += !report(7, "power trends", 180.0, trends);
    failures += !report(8, "matching quality", 300.0, matching);
    failures += !report(9, "CLI determinism", 0.0, determinism);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
