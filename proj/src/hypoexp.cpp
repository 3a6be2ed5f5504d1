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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "harqnoma/outage.hpp"

namespace harqnoma {

namespace {

struct Pole {
    double rate;
    int multiplicity;
};

std::vector<Pole> merge_rates(std::span<const double> rates) {
    std::vector<double> sorted(rates.begin(), rates.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Pole> poles;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        double sum = sorted[i];
        while (j < sorted.size() && (sorted[j] - sorted[i]) < 1e-6 * sorted[i]) sum += sorted[j++];
        poles.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
        i = j;
    }
    return poles;
}

// Regularized lower incomplete gamma P(l, y) for integer l >= 1.
double erlang_cdf(int l, double y) {
    if (y <= 0.0) return 0.0;
    if (y < l + 1.0) {
        // e^{-y} sum_{n >= l} y^n / n!, no cancellation for small y
        double term = std::exp(-y);
        for (int n = 1; n <= l; ++n) term *= y / n;
        double acc = 0.0;
        for (int n = l; n < l + 400; ++n) {
            acc += term;
            term *= y / (n + 1);
            if (term < 1e-18 * acc) break;
        }
        return std::min(acc, 1.0);
    }
    double term = 1.0;
    double acc = 0.0;
    for (int n = 0; n < l; ++n) {
        acc += term;
        term *= y / (n + 1);
    }
    return 1.0 - std::exp(-y) * acc;
}

}  // namespace

double hypoexp_cdf(std::span<const double> rates, double x) {
    if (rates.empty()) throw std::invalid_argument("hypoexp_cdf: no rates");
    for (double r : rates)
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("hypoexp_cdf: rates must be finite and > 0");
    if (x <= 0.0) return 0.0;

    const auto poles = merge_rates(rates);
    double cdf = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        const double ri = poles[i].rate;
        const int ki = poles[i].multiplicity;
        // Series in eps = s + r_i of r_i^{k_i} prod_{j != i} (r_j / (r_j - r_i + eps))^{k_j},
        // truncated at degree k_i - 1.
        std::vector<double> series(static_cast<std::size_t>(ki), 0.0);
        series[0] = std::pow(ri, ki);
        for (std::size_t j = 0; j < poles.size(); ++j) {
            if (j == i) continue;
            const double diff = poles[j].rate - ri;
            const int kj = poles[j].multiplicity;
            series[0] *= std::pow(poles[j].rate / diff, kj);
            if (ki == 1) continue;
            // (1 + eps/diff)^{-kj} = sum_n (-1)^n C(kj + n - 1, n) (eps/diff)^n
            std::vector<double> factor(static_cast<std::size_t>(ki));
            factor[0] = 1.0;
            for (int n = 1; n < ki; ++n)
                factor[static_cast<std::size_t>(n)] = factor[static_cast<std::size_t>(n - 1)] *
                                                      -(kj + n - 1.0) / (n * diff);
            std::vector<double> next(static_cast<std::size_t>(ki), 0.0);
            for (int a = 0; a < ki; ++a)
                for (int b = 0; a + b < ki; ++b)
                    next[static_cast<std::size_t>(a + b)] +=
                        series[static_cast<std::size_t>(a)] * factor[static_cast<std::size_t>(b)];
            series.swap(next);
        }
        // A_{i,l} is the eps^{k_i - l} coefficient; its term integrates to A / r^l * P(l, r x).
        for (int l = 1; l <= ki; ++l) {
            const double a = series[static_cast<std::size_t>(ki - l)];
            cdf += a / std::pow(ri, l) * erlang_cdf(l, ri * x);
        }
    }
    return std::clamp(cdf, 0.0, 1.0);
}

}  // namespace harqnoma
