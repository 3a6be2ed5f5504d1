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

#include "harqnoma/experiments.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <vector>

#include "harqnoma/monte_carlo.hpp"
#include "harqnoma/outage.hpp"
#include "harqnoma/pairing.hpp"
#include "harqnoma/rng.hpp"

namespace harqnoma {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Row = std::vector<std::string>;

// Evaluates every sweep point, possibly in parallel, and keeps rows in order.
// The first failure in sweep order is rethrown after the loop.
template <typename Point>
std::vector<Row> sweep(std::size_t count, const Point& point) {
    std::vector<Row> rows(count);
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            rows[k] = point(k);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

LinkParams weak_link(const ScenarioConfig& c) {
    return LinkParams{c.weak_distance, c.path_loss_exponent, c.noise_power};
}

LinkParams strong_link(const ScenarioConfig& c) {
    return LinkParams{c.strong_distance, c.path_loss_exponent, c.noise_power};
}

std::string cell(double v) { return format_number(v); }

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "outage") return Command::Outage;
    if (name == "power") return Command::Power;
    if (name == "pair") return Command::Pair;
    if (name == "rounds") return Command::Rounds;
    return std::nullopt;
}

ScenarioMode mode_for(Command command) {
    switch (command) {
        case Command::Outage: return ScenarioMode::OutageValidation;
        case Command::Power: return ScenarioMode::TwoUser;
        case Command::Pair: return ScenarioMode::MultiUser;
        case Command::Rounds: return ScenarioMode::Rounds;
    }
    return ScenarioMode::TwoUser;
}

ScaParams sca_params_from(const ScenarioConfig& c, std::size_t rounds) {
    ScaParams p;
    p.rounds = rounds;
    p.weak_link = weak_link(c);
    p.strong_link = strong_link(c);
    p.weak_qos = c.weak_qos;
    p.strong_qos = c.strong_qos;
    p.p_max = c.system.p_max;
    p.tolerance = c.system.sca_tolerance;
    p.stehfest_m = c.system.stehfest_m;
    p.chebyshev_n = c.system.chebyshev_n;
    p.max_outer_iterations = c.max_outer_iterations;
    return p;
}

CsvTable run_outage_validation(const ScenarioConfig& c, std::uint64_t seed) {
    CsvTable table;
    table.header = {c.sweep_axis, "closed_form", "mc_estimate", "mc_stderr"};
    const double lambda1 = normalized_gain(weak_link(c));
    const double lambda2 = normalized_gain(strong_link(c));
    table.rows = sweep(c.sweep_values.size(), [&](std::size_t i) {
        const double v = c.sweep_values[i];
        double gamma1 = c.weak_qos.target_snr;
        double gamma2 = c.strong_qos.target_snr;
        PowerSchedule s = c.schedule;
        if (c.sweep_axis == "gamma")
            (c.user == 1 ? gamma1 : gamma2) = v;
        else
            s = s.scaled(v);
        const std::uint64_t point_seed = stream_seed(seed, i);
        double closed = kNaN;
        McResult mc;
        if (c.user == 1) {
            try {
                closed = user1_outage_closed({s, lambda1, gamma1, c.system.chebyshev_n, c.system.stehfest_m}).value;
            } catch (const CapacityError&) {
            }
            mc = simulate_user1_outage(s, lambda1, gamma1, c.system.mc_trials, point_seed);
        } else {
            closed = user2_outage_closed({s.p2, lambda2, gamma2, c.system.stehfest_m}).value;
            mc = simulate_user2_outage(s, lambda2, gamma1, gamma2, c.system.mc_trials, point_seed);
        }
        return Row{cell(v), cell(closed), cell(mc.estimate), cell(mc.std_error)};
    });
    return table;
}

CsvTable run_power_sweep(const ScenarioConfig& c, std::uint64_t /*seed*/) {
    CsvTable table;
    table.header = {c.sweep_axis, "sca_power", "grid_power", "epa_power", "sca_full_power", "status"};
    table.rows = sweep(c.sweep_values.size(), [&](std::size_t i) {
        const double v = c.sweep_values[i];
        const std::size_t rounds = c.sweep_axis == "rounds" ? static_cast<std::size_t>(v) : c.rounds;
        ScaParams p = sca_params_from(c, rounds);
        if (c.sweep_axis == "delta") p.strong_qos.max_outage = v;

        std::string grid = "";
        if (rounds <= 2) {
            try {
                grid = cell(grid_oracle(p, c.grid_levels).objective);
            } catch (const NoFeasiblePoint&) {
                grid = cell(kNaN);
            }
        }
        double sca = kNaN, epa = kNaN, full = kNaN;
        std::string status = "ok";
        try {
            const auto res = sca_solve(p);
            sca = res.objective;
            try {
                full = full_average_power(p, res.schedule);
            } catch (const CapacityError&) {
            }
            if (const auto e = equal_power_schedule(p, res.schedule.ratio(0)))
                epa = approx_average_power(p, *e);
            if (!res.trace.converged) status = "max_iterations";
        } catch (const InfeasibleInit&) {
            status = "infeasible";
        } catch (const SubproblemInfeasible&) {
            status = "infeasible";
        }
        return Row{cell(v), cell(sca), grid, cell(epa), cell(full), status};
    });
    return table;
}

CsvTable run_pairing(const ScenarioConfig& c, std::uint64_t seed) {
    CsvTable table;
    table.header = {"users", "matching_power", "oracle_power", "swap_count"};
    PairingConfig pc;
    pc.sca = sca_params_from(c, c.rounds);
    pc.path_loss_exponent = c.path_loss_exponent;
    pc.noise_power = c.noise_power;
    pc.cu_qos = c.strong_qos;
    pc.eu_qos = c.weak_qos;
    pc.p_max = c.system.p_max;
    table.rows = sweep(c.sweep_values.size(), [&](std::size_t i) {
        const auto k = static_cast<std::size_t>(c.sweep_values[i]);
        const std::uint64_t point_seed = stream_seed(seed, i);
        double matched = 0.0, oracle = 0.0, swaps = 0.0;
        const auto reps = static_cast<std::size_t>(c.realizations);
        for (std::size_t r = 0; r < reps; ++r) {
            const auto placement = sample_placement(k, c.r_c, c.r_e, stream_seed(point_seed, r));
            const auto costs = build_cost_matrix(placement, pc);
            const auto state = swap_phase(initial_matching(build_preferences(costs), costs), costs);
            matched += state.total_cost;
            swaps += static_cast<double>(state.swap_count);
            if (k <= 8) oracle += permutation_oracle(costs).total_cost;
        }
        const double n = static_cast<double>(reps);
        return Row{cell(static_cast<double>(k)), cell(matched / n), k <= 8 ? cell(oracle / n) : "",
                   cell(swaps / n)};
    });
    return table;
}

CsvTable run_min_rounds(const ScenarioConfig& c, std::uint64_t /*seed*/) {
    CsvTable table;
    table.header = {"delta", "rounds", "status"};
    table.rows = sweep(c.sweep_values.size(), [&](std::size_t i) {
        const double v = c.sweep_values[i];
        ScaParams p = sca_params_from(c, 1);
        p.strong_qos.max_outage = v;
        try {
            const auto res = min_rounds(p, c.t_max);
            return Row{cell(v), std::to_string(res.rounds), "ok"};
        } catch (const RoundsInfeasible&) {
            return Row{cell(v), "", "infeasible"};
        }
    });
    return table;
}

CsvTable run_command(Command command, const ScenarioConfig& config, std::uint64_t seed) {
    if (config.mode != mode_for(command))
        throw ConfigError(std::string("scenario.mode is ") + to_string(config.mode) +
                              " but this command needs " + to_string(mode_for(command)),
                          0);
    switch (command) {
        case Command::Outage: return run_outage_validation(config, seed);
        case Command::Power: return run_power_sweep(config, seed);
        case Command::Pair: return run_pairing(config, seed);
        case Command::Rounds: return run_min_rounds(config, seed);
    }
    return {};
}

}  // namespace harqnoma
