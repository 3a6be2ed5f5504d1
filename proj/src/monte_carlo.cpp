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

#include "harqnoma/monte_carlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "harqnoma/rng.hpp"

namespace harqnoma {

namespace {

// Every trial falls into one of a few outcome categories carrying a fixed
// value (0/1 for outage, cumulative power for episodes). Tallying integer
// counts keeps the merge exact.
using Histogram = std::vector<std::int64_t>;

void check_trials(std::int64_t trials) {
    if (trials < kMinTrials)
        throw std::invalid_argument("Monte Carlo needs at least 1e4 trials, got " +
                                    std::to_string(trials));
}

template <typename Trial>
Histogram run_block(const Trial& trial, std::size_t categories, std::uint64_t seed,
                    std::int64_t block, std::int64_t trials) {
    Histogram h(categories, 0);
    std::mt19937_64 engine(stream_seed(seed, static_cast<std::uint64_t>(block)));
    const std::int64_t begin = block * kTrialBlock;
    const std::int64_t end = std::min(trials, begin + kTrialBlock);
    for (std::int64_t i = begin; i < end; ++i) ++h[trial(engine)];
    return h;
}

McResult summarize(const Histogram& h, const std::vector<double>& values, std::int64_t trials,
                   std::uint64_t seed) {
    const double n = static_cast<double>(trials);
    double mean = 0.0;
    for (std::size_t c = 0; c < h.size(); ++c)
        if (h[c] != 0) mean += static_cast<double>(h[c]) / n * values[c];
    double ss = 0.0;
    for (std::size_t c = 0; c < h.size(); ++c) {
        if (h[c] == 0) continue;
        const double d = values[c] - mean;
        ss += static_cast<double>(h[c]) * d * d;
    }
    McResult r;
    r.estimate = mean;
    r.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    r.trials = trials;
    r.seed = seed;
    return r;
}

template <typename Trial>
Histogram tally_parallel(const Trial& trial, std::size_t categories, std::uint64_t seed,
                         std::int64_t trials) {
    const std::int64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<Histogram> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b)
        partial[static_cast<std::size_t>(b)] = run_block(trial, categories, seed, b, trials);
    Histogram total(categories, 0);
    for (const auto& h : partial)
        for (std::size_t c = 0; c < categories; ++c) total[c] += h[c];
    return total;
}

template <typename Trial>
Histogram tally_serial(const Trial& trial, std::size_t categories, std::uint64_t seed,
                       std::int64_t trials) {
    const std::int64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    Histogram total(categories, 0);
    for (std::int64_t b = 0; b < blocks; ++b) {
        const auto h = run_block(trial, categories, seed, b, trials);
        for (std::size_t c = 0; c < categories; ++c) total[c] += h[c];
    }
    return total;
}

struct User1Trial {
    const PowerSchedule* s;
    double lambda;
    double gamma;

    std::size_t operator()(std::mt19937_64& engine) const {
        double acc = 0.0;
        for (std::size_t t = 0; t < s->rounds(); ++t)
            acc += sinr_weak(s->p1[t], s->p2[t], unit_exponential(engine), lambda);
        return acc < gamma ? 1 : 0;
    }
};

struct User2Trial {
    const PowerSchedule* s;
    double lambda;
    double gamma1;
    double gamma2;

    std::size_t operator()(std::mt19937_64& engine) const {
        double acc1 = 0.0;
        double acc2 = 0.0;
        for (std::size_t t = 0; t < s->rounds(); ++t) {
            const auto r = sinr_strong(s->p1[t], s->p2[t], unit_exponential(engine), lambda);
            acc1 += r.sinr_x1;
            acc2 += r.snr_x2;
        }
        return (acc1 >= gamma1 && acc2 >= gamma2) ? 0 : 1;
    }
};

// Category k - 1 means the episode used k rounds.
struct EpisodeTrial {
    const PowerSchedule* s;
    double lambda1;
    double lambda2;
    double gamma1;
    double gamma2;

    std::size_t operator()(std::mt19937_64& engine) const {
        double weak = 0.0;
        double strong_x1 = 0.0;
        double strong_x2 = 0.0;
        const std::size_t rounds = s->rounds();
        for (std::size_t t = 0; t < rounds; ++t) {
            const double h1 = unit_exponential(engine);
            const double h2 = unit_exponential(engine);
            weak += sinr_weak(s->p1[t], s->p2[t], h1, lambda1);
            const auto r = sinr_strong(s->p1[t], s->p2[t], h2, lambda2);
            strong_x1 += r.sinr_x1;
            strong_x2 += r.snr_x2;
            const bool ok1 = weak >= gamma1;
            const bool ok2 = strong_x1 >= gamma1 && strong_x2 >= gamma2;
            if (ok1 && ok2) return t;
        }
        return rounds - 1;
    }
};

void check_schedule(const PowerSchedule& s) {
    s.validate();
    if (s.rounds() == 0) throw std::invalid_argument("Monte Carlo: empty schedule");
}

std::vector<double> episode_values(const PowerSchedule& s) {
    std::vector<double> v(s.rounds());
    double acc = 0.0;
    for (std::size_t t = 0; t < s.rounds(); ++t) v[t] = (acc += s.total(t));
    return v;
}

const std::vector<double> kIndicator{0.0, 1.0};

}  // namespace

McResult simulate_user1_outage(const PowerSchedule& schedule, double lambda1, double gamma1,
                               std::int64_t trials, std::uint64_t seed) {
    check_trials(trials);
    check_schedule(schedule);
    const User1Trial trial{&schedule, lambda1, gamma1};
    return summarize(tally_parallel(trial, 2, seed, trials), kIndicator, trials, seed);
}

McResult simulate_user2_outage(const PowerSchedule& schedule, double lambda2, double gamma1,
                               double gamma2, std::int64_t trials, std::uint64_t seed) {
    check_trials(trials);
    check_schedule(schedule);
    const User2Trial trial{&schedule, lambda2, gamma1, gamma2};
    return summarize(tally_parallel(trial, 2, seed, trials), kIndicator, trials, seed);
}

McResult simulate_episode_power(const PowerSchedule& schedule, double lambda1, double lambda2,
                                double gamma1, double gamma2, std::int64_t trials,
                                std::uint64_t seed) {
    check_trials(trials);
    check_schedule(schedule);
    const EpisodeTrial trial{&schedule, lambda1, lambda2, gamma1, gamma2};
    return summarize(tally_parallel(trial, schedule.rounds(), seed, trials),
                     episode_values(schedule), trials, seed);
}

namespace reference {

McResult simulate_user1_outage(const PowerSchedule& schedule, double lambda1, double gamma1,
                               std::int64_t trials, std::uint64_t seed) {
    check_trials(trials);
    check_schedule(schedule);
    const User1Trial trial{&schedule, lambda1, gamma1};
    return summarize(tally_serial(trial, 2, seed, trials), kIndicator, trials, seed);
}

McResult simulate_user2_outage(const PowerSchedule& schedule, double lambda2, double gamma1,
                               double gamma2, std::int64_t trials, std::uint64_t seed) {
    check_trials(trials);
    check_schedule(schedule);
    const User2Trial trial{&schedule, lambda2, gamma1, gamma2};
    return summarize(tally_serial(trial, 2, seed, trials), kIndicator, trials, seed);
}

McResult simulate_episode_power(const PowerSchedule& schedule, double lambda1, double lambda2,
                                double gamma1, double gamma2, std::int64_t trials,
                                std::uint64_t seed) {
    check_trials(trials);
    check_schedule(schedule);
    const EpisodeTrial trial{&schedule, lambda1, lambda2, gamma1, gamma2};
    return summarize(tally_serial(trial, schedule.rounds(), seed, trials),
                     episode_values(schedule), trials, seed);
}

}  // namespace reference

}  // namespace harqnoma
