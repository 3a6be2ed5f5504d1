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

#include "harqnoma/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace harqnoma {

namespace {

__extension__ typedef unsigned __int128 wide;

wide binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    wide r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // exact at every step
    return r;
}

wide ipow(unsigned base, unsigned exp) {
    wide r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

double to_double(wide v) {
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    const auto lo = static_cast<std::uint64_t>(v);
    return std::ldexp(static_cast<double>(hi), 64) + static_cast<double>(lo);
}

}  // namespace

double ChebyshevNodes::weight(std::size_t i) const {
    const double a = nodes[i];
    return std::numbers::pi / static_cast<double>(nodes.size()) * std::sqrt(1.0 - a * a);
}

ChebyshevNodes chebyshev_nodes(int n) {
    if (n < 1) throw std::invalid_argument("chebyshev_nodes: N must be >= 1");
    ChebyshevNodes out;
    out.nodes.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        out.nodes[static_cast<std::size_t>(i - 1)] =
            std::cos((2.0 * i - 1.0) * std::numbers::pi / (2.0 * n));
    return out;
}

StehfestWeights stehfest_weights(int m) {
    if (m < 2 || m > 20 || m % 2 != 0)
        throw std::invalid_argument("stehfest_weights: M must be even and in [2, 20], got " +
                                    std::to_string(m));
    const unsigned half = static_cast<unsigned>(m / 2);
    // j^(h) (2j)! / ((h-j)! j! (j-1)! (k-j)! (2j-k)!) == j^(h+1) C(h,j) C(2j,j) C(j,k-j) / h!
    wide h_factorial = 1;
    for (unsigned i = 2; i <= half; ++i) h_factorial *= i;

    StehfestWeights out;
    out.weights.resize(static_cast<std::size_t>(m));
    for (unsigned k = 1; k <= static_cast<unsigned>(m); ++k) {
        wide sum = 0;
        const unsigned j_hi = k < half ? k : half;
        for (unsigned j = (k + 1) / 2; j <= j_hi; ++j)
            sum += ipow(j, half + 1) * binomial(half, j) * binomial(2 * j, j) * binomial(j, k - j);
        const double magnitude = to_double(sum) / to_double(h_factorial);
        out.weights[k - 1] = ((k + half) % 2 == 0) ? magnitude : -magnitude;
    }
    return out;
}

double stehfest_invert(const LaplaceTransform& transform, double x, const StehfestWeights& w) {
    if (!(x > 0.0)) throw std::invalid_argument("stehfest_invert: x must be > 0");
    const double step = std::numbers::ln2 / x;
    double acc = 0.0;
    for (int k = 1; k <= w.order(); ++k) {
        const double f = transform(k * step);
        if (!std::isfinite(f))
            throw std::domain_error("stehfest_invert: transform is not finite at s = " +
                                    std::to_string(k * step));
        acc += w.w(k) * f;
    }
    return step * acc;
}

double stehfest_invert_cdf(const LaplaceTransform& density_transform, double x,
                           const StehfestWeights& w) {
    if (!(x > 0.0)) throw std::invalid_argument("stehfest_invert_cdf: x must be > 0");
    const double step = std::numbers::ln2 / x;
    double acc = 0.0;
    for (int k = 1; k <= w.order(); ++k) {
        const double f = density_transform(k * step);
        if (!std::isfinite(f))
            throw std::domain_error("stehfest_invert_cdf: transform is not finite at s = " +
                                    std::to_string(k * step));
        acc += w.w(k) / k * f;
    }
    return acc;
}

}  // namespace harqnoma
