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

#ifndef HARQNOMA_RNG_HPP
#define HARQNOMA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace harqnoma {

// splitmix64 finalizer; advances `state` by the golden-ratio increment.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of stream `index` under a master seed. Streams are a pure function of
// (seed, index), so work can be split in any order.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed;
    const std::uint64_t a = splitmix64(state);
    state = a ^ (index * 0xd1b54a32d192ed03ULL);
    splitmix64(state);
    return splitmix64(state);
}

// Uniform on (0, 1] with 53 random bits.
inline double uniform_open_closed(std::mt19937_64& engine) {
    return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
}

// Unit-mean exponential, the power gain of a Rayleigh-faded link.
inline double unit_exponential(std::mt19937_64& engine) {
    return -std::log(uniform_open_closed(engine));
}

}  // namespace harqnoma

#endif  // HARQNOMA_RNG_HPP
