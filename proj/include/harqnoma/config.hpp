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

#ifndef HARQNOMA_CONFIG_HPP
#define HARQNOMA_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "harqnoma/core_model.hpp"

namespace harqnoma {

// Error with the 1-based line of the offending entry (0 when not tied to a line).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line);
    int line() const { return line_; }

private:
    int line_;
};

/// Raw key = value file with [section] headers.
///
/// Comments start with '#' or ';' and run to the end of the line. Keys are
/// addressed as "section.key". Keys outside any section, duplicate keys and
/// malformed lines are errors.
class ConfigFile {
public:
    struct Entry {
        std::string value;
        int line = 0;
    };

    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    const Entry* find(const std::string& key) const;
    const std::map<std::string, Entry>& entries() const { return entries_; }

private:
    std::map<std::string, Entry> entries_;
};

enum class ScenarioMode { OutageValidation, TwoUser, MultiUser, Rounds };

const char* to_string(ScenarioMode mode);

// Typed scenario. Field defaults are the usual desk-scale settings.
struct ScenarioConfig {
    ScenarioMode mode = ScenarioMode::TwoUser;

    SystemConfig system;
    int max_outer_iterations = 50;

    // User 1 is the weak (far) user, user 2 the strong (near) one.
    QosSpec weak_qos{0.2, 0.1};
    QosSpec strong_qos{1.0, 0.1};
    double weak_distance = 10.0;
    double strong_distance = 4.0;
    double path_loss_exponent = 2.0;
    double noise_power = 0.1;

    // Outage validation: which user's outage is swept.
    int user = 1;
    PowerSchedule schedule = PowerSchedule::uniform(1, 28.0, 12.0);
    std::size_t rounds = 1;

    std::string sweep_axis;
    std::vector<double> sweep_values;
    int sweep_line = 0;

    int grid_levels = 60;

    double r_c = 4.0;
    double r_e = 10.0;
    int realizations = 20;

    std::size_t t_max = 4;
};

// Validates keys, types and ranges; errors carry the line of the entry.
ScenarioConfig scenario_from(const ConfigFile& file);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace harqnoma

#endif  // HARQNOMA_CONFIG_HPP
