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

#include "harqnoma/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace harqnoma {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "scenario.mode",        "scenario.user",
        "system.p_max",         "system.sca_tolerance",  "system.mc_trials",
        "system.seed",          "system.chebyshev_n",    "system.stehfest_m",
        "system.max_outer_iterations",
        "users.gamma1",         "users.gamma2",          "users.delta1",
        "users.delta2",         "users.d1",              "users.d2",
        "users.alpha",          "users.noise",
        "schedule.rounds",      "schedule.p1",           "schedule.p2",
        "sweep.axis",           "sweep.values",
        "grid.levels",
        "pairing.r_c",          "pairing.r_e",           "pairing.realizations",
        "rounds.t_max",
    };
    return keys;
}

double parse_number(const std::string& text, const std::string& key, int line) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ConfigError(key + ": expected a number, got '" + t + "'", line);
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& key, int line) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_number(tok, key, line));
    return out;
}

long long parse_integer(const std::string& text, const std::string& key, int line) {
    const std::string t = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(key + ": expected an integer, got '" + t + "'", line);
    return v;
}

class Reader {
public:
    explicit Reader(const ConfigFile& f) : file_(f) {}

    bool has(const std::string& key) const { return file_.has(key); }
    int line(const std::string& key) const {
        const auto* e = file_.find(key);
        return e ? e->line : 0;
    }

    void number(const std::string& key, double& out) const {
        if (const auto* e = file_.find(key)) out = parse_number(e->value, key, e->line);
    }
    template <typename Int>
    void integer(const std::string& key, Int& out) const {
        if (const auto* e = file_.find(key)) out = static_cast<Int>(parse_integer(e->value, key, e->line));
    }
    void positive(const std::string& key, double& out) const {
        number(key, out);
        if (!(out > 0.0)) throw ConfigError(key + " must be > 0", line(key));
    }
    void probability(const std::string& key, double& out) const {
        number(key, out);
        if (!(out > 0.0 && out < 1.0)) throw ConfigError(key + " must be in (0, 1)", line(key));
    }
    std::optional<std::vector<double>> list(const std::string& key) const {
        if (const auto* e = file_.find(key)) return parse_list(e->value, key, e->line);
        return std::nullopt;
    }
    std::optional<std::string> text(const std::string& key) const {
        if (const auto* e = file_.find(key)) return e->value;
        return std::nullopt;
    }

private:
    const ConfigFile& file_;
};

}  // namespace

ConfigError::ConfigError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message
                                  : "config: " + message),
      line_(line) {}

const ConfigFile::Entry* ConfigFile::find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile f;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find_first_of("#;");
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw ConfigError("malformed section header '" + line + "'", lineno);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value, got '" + line + "'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);
        if (section.empty()) throw ConfigError("key '" + key + "' outside any section", lineno);
        const std::string full = section + "." + key;
        if (!known_keys().count(full)) throw ConfigError("unknown key '" + full + "'", lineno);
        if (f.entries_.count(full))
            throw ConfigError("duplicate key '" + full + "' (first on line " +
                                  std::to_string(f.entries_[full].line) + ")",
                              lineno);
        f.entries_[full] = Entry{value, lineno};
    }
    return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const char* to_string(ScenarioMode mode) {
    switch (mode) {
        case ScenarioMode::OutageValidation: return "outage_validation";
        case ScenarioMode::TwoUser: return "two_user";
        case ScenarioMode::MultiUser: return "multi_user";
        case ScenarioMode::Rounds: return "rounds";
    }
    return "unknown";
}

ScenarioConfig scenario_from(const ConfigFile& file) {
    const Reader r(file);
    ScenarioConfig c;

    const auto mode = r.text("scenario.mode");
    if (!mode) throw ConfigError("missing scenario.mode", 0);
    if (*mode == "outage_validation")
        c.mode = ScenarioMode::OutageValidation;
    else if (*mode == "two_user")
        c.mode = ScenarioMode::TwoUser;
    else if (*mode == "multi_user")
        c.mode = ScenarioMode::MultiUser;
    else if (*mode == "rounds")
        c.mode = ScenarioMode::Rounds;
    else
        throw ConfigError("unknown mode '" + *mode + "'", r.line("scenario.mode"));
    r.integer("scenario.user", c.user);
    if (c.user != 1 && c.user != 2) throw ConfigError("scenario.user must be 1 or 2", r.line("scenario.user"));

    r.positive("system.p_max", c.system.p_max);
    r.positive("system.sca_tolerance", c.system.sca_tolerance);
    r.integer("system.mc_trials", c.system.mc_trials);
    if (c.system.mc_trials < 10'000)
        throw ConfigError("system.mc_trials must be >= 10000", r.line("system.mc_trials"));
    r.integer("system.seed", c.system.rng_seed);
    r.integer("system.chebyshev_n", c.system.chebyshev_n);
    if (c.system.chebyshev_n < 1) throw ConfigError("system.chebyshev_n must be >= 1", r.line("system.chebyshev_n"));
    r.integer("system.stehfest_m", c.system.stehfest_m);
    if (c.system.stehfest_m < 2 || c.system.stehfest_m > 20 || c.system.stehfest_m % 2 != 0)
        throw ConfigError("system.stehfest_m must be even and in [2, 20]", r.line("system.stehfest_m"));
    r.integer("system.max_outer_iterations", c.max_outer_iterations);
    if (c.max_outer_iterations < 1)
        throw ConfigError("system.max_outer_iterations must be >= 1", r.line("system.max_outer_iterations"));

    r.positive("users.gamma1", c.weak_qos.target_snr);
    r.positive("users.gamma2", c.strong_qos.target_snr);
    r.probability("users.delta1", c.weak_qos.max_outage);
    r.probability("users.delta2", c.strong_qos.max_outage);
    r.number("users.d1", c.weak_distance);
    r.number("users.d2", c.strong_distance);
    if (c.weak_distance < 0.0) throw ConfigError("users.d1 must be >= 0", r.line("users.d1"));
    if (c.strong_distance < 0.0) throw ConfigError("users.d2 must be >= 0", r.line("users.d2"));
    r.positive("users.alpha", c.path_loss_exponent);
    r.positive("users.noise", c.noise_power);

    long long rounds = static_cast<long long>(c.rounds);
    r.integer("schedule.rounds", rounds);
    if (rounds < 1) throw ConfigError("schedule.rounds must be >= 1", r.line("schedule.rounds"));
    c.rounds = static_cast<std::size_t>(rounds);
    const auto p1 = r.list("schedule.p1");
    const auto p2 = r.list("schedule.p2");
    if (p1.has_value() != p2.has_value())
        throw ConfigError("schedule.p1 and schedule.p2 must be given together",
                          r.line(p1 ? "schedule.p1" : "schedule.p2"));
    if (p1) {
        if (p1->empty() || p1->size() != p2->size())
            throw ConfigError("schedule.p1 and schedule.p2 need the same nonzero length", r.line("schedule.p2"));
        if (r.has("schedule.rounds") && p1->size() != c.rounds)
            throw ConfigError("schedule.rounds disagrees with the length of schedule.p1", r.line("schedule.rounds"));
        try {
            c.schedule = PowerSchedule(*p1, *p2);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what(), r.line("schedule.p1"));
        }
        c.rounds = p1->size();
    } else {
        c.schedule = PowerSchedule::uniform(c.rounds, 0.7 * c.system.p_max, 0.3 * c.system.p_max);
    }

    r.integer("grid.levels", c.grid_levels);
    if (c.grid_levels < 1) throw ConfigError("grid.levels must be >= 1", r.line("grid.levels"));
    r.positive("pairing.r_c", c.r_c);
    r.positive("pairing.r_e", c.r_e);
    if (!(c.r_e > c.r_c)) throw ConfigError("pairing.r_e must exceed pairing.r_c", r.line("pairing.r_e"));
    r.integer("pairing.realizations", c.realizations);
    if (c.realizations < 1) throw ConfigError("pairing.realizations must be >= 1", r.line("pairing.realizations"));
    long long t_max = static_cast<long long>(c.t_max);
    r.integer("rounds.t_max", t_max);
    if (t_max < 1) throw ConfigError("rounds.t_max must be >= 1", r.line("rounds.t_max"));
    c.t_max = static_cast<std::size_t>(t_max);

    const auto axis = r.text("sweep.axis");
    if (!axis) throw ConfigError("missing sweep.axis", 0);
    c.sweep_axis = *axis;
    c.sweep_line = r.line("sweep.axis");
    std::vector<std::string> allowed;
    switch (c.mode) {
        case ScenarioMode::OutageValidation: allowed = {"gamma", "rho"}; break;
        case ScenarioMode::TwoUser: allowed = {"delta", "rounds"}; break;
        case ScenarioMode::MultiUser: allowed = {"users"}; break;
        case ScenarioMode::Rounds: allowed = {"delta"}; break;
    }
    if (std::find(allowed.begin(), allowed.end(), c.sweep_axis) == allowed.end())
        throw ConfigError("sweep.axis '" + c.sweep_axis + "' is not valid for mode " + to_string(c.mode),
                          c.sweep_line);
    const auto values = r.list("sweep.values");
    const int vline = r.line("sweep.values");
    if (!values || values->empty()) throw ConfigError("sweep.values must not be empty", vline ? vline : c.sweep_line);
    c.sweep_values = *values;
    for (std::size_t i = 1; i < c.sweep_values.size(); ++i)
        if (!(c.sweep_values[i] > c.sweep_values[i - 1]))
            throw ConfigError("sweep.values must be strictly increasing", vline);
    for (double v : c.sweep_values) {
        if (!(v > 0.0)) throw ConfigError("sweep.values must be > 0", vline);
        if ((c.sweep_axis == "rounds" || c.sweep_axis == "users") && v != std::floor(v))
            throw ConfigError("sweep.values must be integers for axis " + c.sweep_axis, vline);
        if (c.sweep_axis == "delta" && !(v < 1.0)) throw ConfigError("delta values must be < 1", vline);
        if (c.sweep_axis == "users" && v > 64) throw ConfigError("at most 64 users per side", vline);
    }
    return c;
}

ScenarioConfig load_scenario(const std::string& path) { return scenario_from(ConfigFile::load(path)); }

}  // namespace harqnoma
