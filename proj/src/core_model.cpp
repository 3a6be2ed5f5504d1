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

#include "harqnoma/core_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace harqnoma {

void LinkParams::validate() const {
    if (!(distance >= 0.0) || !std::isfinite(distance))
        throw std::invalid_argument("link distance must be finite and >= 0");
    if (!(path_loss_exponent > 0.0))
        throw std::invalid_argument("path loss exponent must be > 0");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("noise power must be > 0");
}

double normalized_gain(const LinkParams& link) {
    link.validate();
    return 1.0 / ((1.0 + std::pow(link.distance, link.path_loss_exponent)) * link.noise_power);
}

void QosSpec::validate() const {
    if (!(target_snr > 0.0)) throw std::invalid_argument("target SNR must be > 0");
    if (!(max_outage > 0.0 && max_outage < 1.0))
        throw std::invalid_argument("max outage must lie in (0, 1)");
}

PowerSchedule::PowerSchedule(std::vector<double> weak, std::vector<double> strong)
    : p1(std::move(weak)), p2(std::move(strong)) {
    validate();
}

PowerSchedule PowerSchedule::uniform(std::size_t rounds, double weak, double strong) {
    return PowerSchedule(std::vector<double>(rounds, weak), std::vector<double>(rounds, strong));
}

double PowerSchedule::ratio(std::size_t t) const {
    if (p2[t] == 0.0) return std::numeric_limits<double>::infinity();
    return p1[t] / p2[t];
}

double PowerSchedule::ratio_sum() const {
    double s = 0.0;
    for (std::size_t t = 0; t < rounds(); ++t) s += ratio(t);
    return s;
}

PowerSchedule PowerSchedule::scaled(double factor) const {
    PowerSchedule out = *this;
    for (auto& p : out.p1) p *= factor;
    for (auto& p : out.p2) p *= factor;
    return out;
}

PowerSchedule PowerSchedule::prefix(std::size_t rounds) const {
    if (rounds > this->rounds()) throw std::invalid_argument("prefix longer than schedule");
    return PowerSchedule(std::vector<double>(p1.begin(), p1.begin() + rounds),
                         std::vector<double>(p2.begin(), p2.begin() + rounds));
}

void PowerSchedule::validate() const {
    if (p1.size() != p2.size())
        throw std::invalid_argument("power schedule: p1 and p2 lengths differ");
    if (p1.empty()) throw std::invalid_argument("power schedule needs at least one round");
    for (std::size_t t = 0; t < p1.size(); ++t) {
        if (!(p1[t] >= 0.0) || !(p2[t] >= 0.0) || !std::isfinite(p1[t]) || !std::isfinite(p2[t]))
            throw std::invalid_argument("power schedule: round " + std::to_string(t + 1) +
                                        " has a negative or non-finite power");
    }
}

void PowerSchedule::validate(double p_max) const {
    validate();
    for (std::size_t t = 0; t < p1.size(); ++t) {
        if (p1[t] + p2[t] > p_max * (1.0 + 1e-12))
            throw std::invalid_argument("power schedule: round " + std::to_string(t + 1) +
                                        " exceeds the power cap");
    }
}

void SystemConfig::validate() const {
    if (!(p_max > 0.0)) throw std::invalid_argument("p_max must be > 0");
    if (!(sca_tolerance > 0.0)) throw std::invalid_argument("sca_tolerance must be > 0");
    if (mc_trials <= 0) throw std::invalid_argument("mc_trials must be > 0");
    if (chebyshev_n < 1) throw std::invalid_argument("chebyshev_n must be >= 1");
    if (stehfest_m < 2 || stehfest_m % 2 != 0)
        throw std::invalid_argument("stehfest_m must be an even integer >= 2");
}

double sinr_weak(double p1, double p2, double h, double lambda) {
    const double g = h * lambda;
    return p1 * g / (p2 * g + 1.0);
}

StrongUserSinr sinr_strong(double p1, double p2, double h, double lambda) {
    const double g = h * lambda;
    return {p1 * g / (p2 * g + 1.0), p2 * g};
}

double retransmission_prob(double out1_prev, double out2_prev) {
    return out1_prev + out2_prev - out1_prev * out2_prev;
}

double average_power(const PowerSchedule& schedule, std::span<const double> retrans) {
    if (retrans.size() != schedule.rounds())
        throw std::invalid_argument("average_power: retransmission vector length mismatch");
    if (retrans.front() != 1.0)
        throw std::invalid_argument("average_power: the first round is always transmitted");
    double total = 0.0;
    for (std::size_t t = 0; t < schedule.rounds(); ++t) total += schedule.total(t) * retrans[t];
    return total;
}

}  // namespace harqnoma
