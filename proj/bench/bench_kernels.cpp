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

// Serial reference kernels against their OpenMP versions. The thread count is
// the benchmark argument; 0 selects the reference:: twin.
#include <benchmark/benchmark.h>

#include <cstdint>

#include "harqnoma/monte_carlo.hpp"
#include "harqnoma/outage.hpp"
#include "harqnoma/pairing.hpp"
#include "harqnoma/parallel.hpp"
#include "harqnoma/sca.hpp"

namespace {

using namespace harqnoma;

const PowerSchedule kSchedule({6.0, 6.0, 6.0}, {2.0, 2.0, 2.0});
constexpr double kLambda1 = 1.0 / ((1.0 + 100.0) * 0.1);
constexpr double kLambda2 = 1.0 / ((1.0 + 16.0) * 0.1);

void threads_arg(benchmark::internal::Benchmark* b) {
    for (int t : {0, 1, 2, 4, 8}) b->Arg(t);
}

void BM_McUser1(benchmark::State& state) {
    const auto threads = static_cast<int>(state.range(0));
    if (threads > 0) set_thread_count(threads);
    constexpr std::int64_t trials = 1 << 20;
    for (auto _ : state) {
        const auto r = threads == 0 ? reference::simulate_user1_outage(kSchedule, kLambda1, 0.2, trials, 7)
                                    : simulate_user1_outage(kSchedule, kLambda1, 0.2, trials, 7);
        benchmark::DoNotOptimize(r.estimate);
    }
    state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_McUser1)->Apply(threads_arg)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_McEpisode(benchmark::State& state) {
    const auto threads = static_cast<int>(state.range(0));
    if (threads > 0) set_thread_count(threads);
    constexpr std::int64_t trials = 1 << 19;
    for (auto _ : state) {
        const auto r = threads == 0
                           ? reference::simulate_episode_power(kSchedule, kLambda1, kLambda2, 0.2, 1.0, trials, 7)
                           : simulate_episode_power(kSchedule, kLambda1, kLambda2, 0.2, 1.0, trials, 7);
        benchmark::DoNotOptimize(r.estimate);
    }
    state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_McEpisode)->Apply(threads_arg)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_WeakOutageGrid(benchmark::State& state) {
    const auto threads = static_cast<int>(state.range(0));
    if (threads > 0) set_thread_count(threads);
    const User1OutageInput in{kSchedule, kLambda1, 0.2};
    for (auto _ : state) {
        const auto r = threads == 0 ? reference::user1_outage_closed(in) : user1_outage_closed(in);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_WeakOutageGrid)->Apply(threads_arg)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_GridOracle(benchmark::State& state) {
    const auto threads = static_cast<int>(state.range(0));
    if (threads > 0) set_thread_count(threads);
    ScaParams p;
    p.rounds = 2;
    for (auto _ : state) {
        const auto r = threads == 0 ? reference::grid_oracle(p, 24) : grid_oracle(p, 24);
        benchmark::DoNotOptimize(r.objective);
    }
}
BENCHMARK(BM_GridOracle)->Apply(threads_arg)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CostMatrix(benchmark::State& state) {
    const auto threads = static_cast<int>(state.range(0));
    if (threads > 0) set_thread_count(threads);
    PairingConfig cfg;
    cfg.sca.rounds = 2;
    const auto placement = sample_placement(6, 4.0, 10.0, 11);
    for (auto _ : state) {
        const auto m = threads == 0 ? reference::build_cost_matrix(placement, cfg)
                                    : build_cost_matrix(placement, cfg);
        benchmark::DoNotOptimize(m.cost.data());
    }
}
BENCHMARK(BM_CostMatrix)->Apply(threads_arg)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
