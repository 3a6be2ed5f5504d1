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

#ifndef HARQNOMA_QUADRATURE_HPP
#define HARQNOMA_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace harqnoma {

// Gauss-Chebyshev (first kind) nodes a_n = cos((2n - 1) pi / (2N)), n = 1..N.
// Integrates g over (-1, 1) as (pi/N) * sum_n g(a_n) * sqrt(1 - a_n^2).
struct ChebyshevNodes {
    std::vector<double> nodes;

    std::size_t size() const { return nodes.size(); }
    double operator[](std::size_t i) const { return nodes[i]; }
    // Quadrature weight for node i including the sqrt(1 - a^2) factor.
    double weight(std::size_t i) const;
};

ChebyshevNodes chebyshev_nodes(int n);

/// Gaver-Stehfest weights w_1..w_M.
///
/// These are the standard coefficients
///   w_k = (-1)^(k + M/2) sum_{j=floor((k+1)/2)}^{min(k, M/2)}
///         j^(M/2) (2j)! / ((M/2 - j)! j! (j - 1)! (k - j)! (2j - k)!),
/// evaluated exactly in 128-bit integer arithmetic before a single rounding
/// to double. Some published variants carry an extra 1/k! factor; that
/// version breaks both exactness identities (sum w = 0 and sum w/k = 1)
/// checked in the tests and is not used here.
struct StehfestWeights {
    std::vector<double> weights;  // weights[k - 1] = w_k

    int order() const { return static_cast<int>(weights.size()); }
    // 1-based access matching the usual notation.
    double w(int k) const { return weights[static_cast<std::size_t>(k - 1)]; }
};

StehfestWeights stehfest_weights(int m);

inline constexpr int kDefaultChebyshevN = 30;
inline constexpr int kDefaultStehfestM = 10;

using LaplaceTransform = std::function<double(double)>;

// Inverse Laplace transform of F at x > 0:
//   f(x) ~ (ln2 / x) * sum_k w_k F(k ln2 / x).
// Throws std::domain_error if F returns a non-finite value.
double stehfest_invert(const LaplaceTransform& transform, double x, const StehfestWeights& w);

// CDF of a density whose transform is G: inverts G(s)/s with the 1/s folded
// into the weights, i.e. sum_k (w_k / k) G(k ln2 / x).
double stehfest_invert_cdf(const LaplaceTransform& density_transform, double x,
                           const StehfestWeights& w);

}  // namespace harqnoma

#endif  // HARQNOMA_QUADRATURE_HPP
