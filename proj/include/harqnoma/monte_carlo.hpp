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

#ifndef HARQNOMA_MONTE_CARLO_HPP
#define HARQNOMA_MONTE_CARLO_HPP

#include <cstdint>

#include "harqnoma/core_model.hpp"

namespace harqnoma {

struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(trials)
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::int64_t kMinTrials = 10'000;

// Trials are cut into blocks of kTrialBlock. Block b draws from a
// std::mt19937_64 seeded with stream_seed(seed, b); per-block tallies are
// integers merged in block order, so estimates are bit-identical for any
// thread count.
inline constexpr std::int64_t kTrialBlock = std::int64_t{1} << 14;

// Fraction of trials with sum_t sinr_weak(p1_t, p2_t, h_t, lambda1) < gamma1.
McResult simulate_user1_outage(const PowerSchedule& schedule, double lambda1, double gamma1,
                               std::int64_t trials, std::uint64_t seed);

// 1 - fraction of trials where the strong user both cancels x1 and decodes x2
// from the accumulated rounds.
McResult simulate_user2_outage(const PowerSchedule& schedule, double lambda2, double gamma1,
                               double gamma2, std::int64_t trials, std::uint64_t seed);

/// Mean power spent per HARQ episode.
///
/// Each round draws the weak user's gain and then the strong user's gain.
/// After every round both users test their accumulated SINR/SNR; the episode
/// ends when both have succeeded or after the last scheduled round. The
/// superposed signal costs p1_t + p2_t for every round that is transmitted.
McResult simulate_episode_power(const PowerSchedule& schedule, double lambda1, double lambda2,
                                double gamma1, double gamma2, std::int64_t trials,
                                std::uint64_t seed);

namespace reference {

// Single-threaded versions over the same block streams.
McResult simulate_user1_outage(const PowerSchedule& schedule, double lambda1, double gamma1,
                               std::int64_t trials, std::uint64_t seed);
McResult simulate_user2_outage(const PowerSchedule& schedule, double lambda2, double gamma1,
                               double gamma2, std::int64_t trials, std::uint64_t seed);
McResult simulate_episode_power(const PowerSchedule& schedule, double lambda1, double lambda2,
                                double gamma1, double gamma2, std::int64_t trials,
                                std::uint64_t seed);

}  // namespace reference

}  // namespace harqnoma

#endif  // HARQNOMA_MONTE_CARLO_HPP
