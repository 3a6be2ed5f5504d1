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

#ifndef HARQNOMA_PARALLEL_HPP
#define HARQNOMA_PARALLEL_HPP

#include <cstddef>
#include <span>

namespace harqnoma {

// Thin wrappers over the OpenMP runtime so callers never include <omp.h>.
void set_thread_count(int threads);
int thread_count();

// Pairwise (tree) sum. The association order depends only on the length of
// the input, so reductions built on it are bit-stable across thread counts.
double pairwise_sum(std::span<const double> values);

// Work is cut into fixed-size chunks independent of the thread count; each
// chunk is reduced serially, then chunk results are combined pairwise.
inline constexpr std::size_t kReductionChunk = 4096;

}  // namespace harqnoma

#endif  // HARQNOMA_PARALLEL_HPP
