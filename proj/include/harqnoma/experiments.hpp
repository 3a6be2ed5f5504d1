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

#ifndef HARQNOMA_EXPERIMENTS_HPP
#define HARQNOMA_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string_view>

#include "harqnoma/config.hpp"
#include "harqnoma/csv.hpp"
#include "harqnoma/sca.hpp"

namespace harqnoma {

enum class Command { Outage, Power, Pair, Rounds };

std::optional<Command> parse_command(std::string_view name);
ScenarioMode mode_for(Command command);

// SCA settings for the two-user scenario of a config with the given round count.
ScaParams sca_params_from(const ScenarioConfig& config, std::size_t rounds);

// Sweep runners. Rows follow the sweep order; every random stream is derived
// from `seed` and the row index, so output does not depend on thread count.

// Columns: gamma|rho, closed_form, mc_estimate, mc_stderr.
CsvTable run_outage_validation(const ScenarioConfig& config, std::uint64_t seed);
// Columns: delta|rounds, sca_power, grid_power, epa_power, sca_full_power, status.
// grid_power is empty when T > 2; infeasible cells are nan.
CsvTable run_power_sweep(const ScenarioConfig& config, std::uint64_t seed);
// Columns: users, matching_power, oracle_power, swap_count (averages over
// realizations); oracle_power is empty when K > 8.
CsvTable run_pairing(const ScenarioConfig& config, std::uint64_t seed);
// Columns: delta, rounds, status; rounds is empty when infeasible at t_max.
CsvTable run_min_rounds(const ScenarioConfig& config, std::uint64_t seed);

// Checks that the config mode matches the command, then dispatches.
CsvTable run_command(Command command, const ScenarioConfig& config, std::uint64_t seed);

}  // namespace harqnoma

#endif  // HARQNOMA_EXPERIMENTS_HPP
