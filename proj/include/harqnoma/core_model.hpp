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

#ifndef HARQNOMA_CORE_MODEL_HPP
#define HARQNOMA_CORE_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace harqnoma {

// Large-scale link description of one user. All powers in this library are
// linear Watts; dB only appears at presentation time.
struct LinkParams {
    double distance = 0.0;            // meters, >= 0
    double path_loss_exponent = 2.0;  // > 0
    double noise_power = 0.1;         // Watt, > 0

    void validate() const;
};

// Normalized channel gain 1 / ((1 + d^alpha) * sigma^2).
double normalized_gain(const LinkParams& link);

struct QosSpec {
    double target_snr = 1.0;  // linear, > 0
    double max_outage = 0.1;  // in (0, 1)

    void validate() const;
};

// Per-round power pairs (p1 for the weak user, p2 for the strong user).
struct PowerSchedule {
    std::vector<double> p1;
    std::vector<double> p2;

    PowerSchedule() = default;
    PowerSchedule(std::vector<double> weak, std::vector<double> strong);

    static PowerSchedule uniform(std::size_t rounds, double weak, double strong);

    std::size_t rounds() const { return p1.size(); }
    double total(std::size_t t) const { return p1[t] + p2[t]; }

    // p1/p2 of round t; +infinity when p2 is zero (no interference).
    double ratio(std::size_t t) const;
    double ratio_sum() const;

    PowerSchedule scaled(double factor) const;
    // First `rounds` rounds of this schedule.
    PowerSchedule prefix(std::size_t rounds) const;

    // Nonnegative entries and equal lengths; throws std::invalid_argument.
    void validate() const;
    // validate() plus the per-round cap p1 + p2 <= p_max (relative slack 1e-12).
    void validate(double p_max) const;
};

struct SystemConfig {
    double p_max = 40.0;
    double sca_tolerance = 1e-4;
    std::int64_t mc_trials = 1'000'000;
    std::uint64_t rng_seed = 1;
    int chebyshev_n = 30;
    int stehfest_m = 10;

    void validate() const;
};

// SINR of the weak user decoding x1 while treating x2 as noise.
double sinr_weak(double p1, double p2, double h, double lambda);

struct StrongUserSinr {
    double sinr_x1 = 0.0;  // decoding the weak user's signal before SIC
    double snr_x2 = 0.0;   // own signal after SIC
};

StrongUserSinr sinr_strong(double p1, double p2, double h, double lambda);

// Probability that round t happens, given round t-1 outages of both users.
double retransmission_prob(double out1_prev, double out2_prev);

// Expected power over one HARQ episode. retrans[0] is the first round and must be 1.
double average_power(const PowerSchedule& schedule, std::span<const double> retrans);

}  // namespace harqnoma

#endif  // HARQNOMA_CORE_MODEL_HPP
