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

#include "harqnoma/sca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "harqnoma/outage.hpp"

namespace harqnoma {

namespace {

constexpr double kFloorFraction = 1e-6;  // log-power floor relative to P_max
constexpr double kMinProximal = 1e-3;
constexpr int kMaxProximalRetries = 12;
constexpr double kRatioMargin = 1e-3;

std::vector<double> cdf_coefficients(std::size_t m) {
    const auto w = stehfest_weights(static_cast<int>(m));
    std::vector<double> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = w.weights[i] / static_cast<double>(i + 1);
    return c;
}

double lambda_of(const LinkParams& link) { return normalized_gain(link); }

// Raw Stehfest outage sums after each prefix of p2; entry t covers rounds 0..t.
std::vector<double> raw_chain(std::span<const double> p2, std::span<const double> g,
                              std::span<const double> c) {
    std::vector<double> out(p2.size(), 0.0);
    for (std::size_t mi = 0; mi < g.size(); ++mi) {
        double prod = 1.0;
        for (std::size_t t = 0; t < p2.size(); ++t) {
            prod /= 1.0 + g[mi] * p2[t];
            out[t] += c[mi] * prod;
        }
    }
    return out;
}

}  // namespace

void ScaParams::validate() const {
    if (rounds < 1) throw std::invalid_argument("ScaParams: rounds must be >= 1");
    weak_link.validate();
    strong_link.validate();
    weak_qos.validate();
    strong_qos.validate();
    if (!(p_max > 0.0)) throw std::invalid_argument("ScaParams: P_max must be > 0");
    if (!(tolerance > 0.0)) throw std::invalid_argument("ScaParams: tolerance must be > 0");
    if (stehfest_m < 2 || stehfest_m > 20 || stehfest_m % 2 != 0)
        throw std::invalid_argument("ScaParams: Stehfest M must be even and in [2, 20]");
    if (chebyshev_n < 1) throw std::invalid_argument("ScaParams: Chebyshev N must be >= 1");
    if (max_outer_iterations < 1)
        throw std::invalid_argument("ScaParams: max_outer_iterations must be >= 1");
}

std::vector<double> ScaParams::stehfest_rates() const {
    const double lambda2 = lambda_of(strong_link);
    std::vector<double> g(static_cast<std::size_t>(stehfest_m));
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = static_cast<double>(i + 1) * lambda2 * std::numbers::ln2 / strong_qos.target_snr;
    return g;
}

ScaParams ScaParams::with_rounds(std::size_t t) const {
    ScaParams p = *this;
    p.rounds = t;
    return p;
}

std::vector<double> CovPoint::flatten() const {
    std::vector<double> v;
    v.reserve(x.size() + y.size() + z.size() + 2);
    v.insert(v.end(), x.begin(), x.end());
    v.insert(v.end(), y.begin(), y.end());
    v.insert(v.end(), z.begin(), z.end());
    v.push_back(u1);
    v.push_back(u2);
    return v;
}

PowerSchedule CovPoint::powers() const {
    std::vector<double> p1(y.size()), p2(z.size());
    for (std::size_t i = 0; i < y.size(); ++i) p1[i] = std::exp(y[i]);
    for (std::size_t i = 0; i < z.size(); ++i) p2[i] = std::exp(z[i]);
    return PowerSchedule(std::move(p1), std::move(p2));
}

CovPoint unflatten(std::span<const double> v, std::size_t m, std::size_t t) {
    const CovLayout lay{m, t};
    if (v.size() != lay.size()) throw std::invalid_argument("unflatten: size mismatch");
    CovPoint p;
    p.m = m;
    p.t = t;
    p.x.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m * t));
    p.y.assign(v.begin() + static_cast<std::ptrdiff_t>(lay.y(0)),
               v.begin() + static_cast<std::ptrdiff_t>(lay.y(0) + t));
    p.z.assign(v.begin() + static_cast<std::ptrdiff_t>(lay.z(0)),
               v.begin() + static_cast<std::ptrdiff_t>(lay.z(0) + t));
    p.u1 = v[lay.u1()];
    p.u2 = v[lay.u2()];
    return p;
}

CovPoint cov_from_powers(std::span<const double> p1, std::span<const double> p2,
                         std::span<const double> g) {
    if (p1.size() != p2.size() || p1.empty())
        throw std::invalid_argument("cov_from_powers: p1 and p2 must have equal nonzero length");
    for (std::size_t t = 0; t < p1.size(); ++t)
        if (!(p1[t] > 0.0) || !(p2[t] > 0.0))
            throw std::invalid_argument("cov_from_powers: powers must be > 0");
    CovPoint pt;
    pt.m = g.size();
    pt.t = p1.size();
    pt.x.resize(pt.m * pt.t);
    pt.y.resize(pt.t);
    pt.z.resize(pt.t);
    for (std::size_t t = 0; t < pt.t; ++t) {
        pt.y[t] = std::log(p1[t]);
        pt.z[t] = std::log(p2[t]);
        for (std::size_t mi = 0; mi < pt.m; ++mi) pt.x_at(mi, t) = -std::log1p(g[mi] * p2[t]);
    }
    // Epigraph variables start at their tails, never below zero.
    const auto c = cdf_coefficients(pt.m);
    const auto chain = raw_chain(p2, g, c);
    double tail1 = 0.0, tail2 = 0.0;
    for (std::size_t t = 1; t < pt.t; ++t) {
        tail1 += p1[t] * chain[t - 1];
        tail2 += p2[t] * chain[t - 1];
    }
    pt.u1 = std::max(tail1, 0.0);
    pt.u2 = std::max(tail2, 0.0);
    return pt;
}

cvx::SubproblemSpec build_subproblem(const CovPoint& point, const ScaParams& params,
                                     double proximal) {
    params.validate();
    if (!(proximal > 0.0)) throw std::invalid_argument("build_subproblem: proximal weight must be > 0");
    const std::size_t M = static_cast<std::size_t>(params.stehfest_m);
    const std::size_t T = params.rounds;
    if (point.m != M || point.t != T)
        throw std::invalid_argument("build_subproblem: point shape does not match parameters");
    const CovLayout lay{M, T};
    const std::size_t n = lay.size();
    const auto g = params.stehfest_rates();
    const auto c = cdf_coefficients(M);
    const double pmax = params.p_max;
    const double delta2 = params.strong_qos.max_outage;
    const auto flat0 = point.flatten();

    cvx::SubproblemSpec spec;
    spec.variables = n;

    auto unit = [&](std::size_t j, double constant = 0.0) {
        cvx::AffineForm e(n, constant);
        e.coeffs[j] = 1.0;
        return e;
    };
    // weight * (cosh(v_j - v0_j) - 1) as two positive exponentials.
    auto add_cosh = [&](cvx::ExpSumFunction& f, std::size_t j, double weight) {
        cvx::AffineForm up = unit(j, -flat0[j]);
        cvx::AffineForm down(n, flat0[j]);
        down.coeffs[j] = -1.0;
        f.add_exp(0.5 * weight, std::move(up));
        f.add_exp(0.5 * weight, std::move(down));
        f.linear.constant -= weight;
    };
    // coeff * exp(exponent) replaced by its tangent at the expansion point.
    auto add_tangent = [&](cvx::ExpSumFunction& f, double coeff, const cvx::AffineForm& exponent) {
        const double a0 = exponent.eval(flat0);
        const double slope = coeff * std::exp(a0);
        for (std::size_t j = 0; j < n; ++j) f.linear.coeffs[j] += slope * exponent.coeffs[j];
        f.linear.constant += slope * (1.0 + exponent.constant - a0);
    };

    const double scale = std::exp(point.y[0]) + std::exp(point.z[0]) + point.u1 + point.u2;
    spec.objective = cvx::ExpSumFunction(n);
    spec.objective.add_exp(1.0, unit(lay.y(0)));
    spec.objective.add_exp(1.0, unit(lay.z(0)));
    spec.objective.linear.coeffs[lay.u1()] = 1.0;
    spec.objective.linear.coeffs[lay.u2()] = 1.0;
    for (std::size_t t = 0; t < T; ++t) {
        add_cosh(spec.objective, lay.y(t), proximal * scale);
        add_cosh(spec.objective, lay.z(t), proximal * scale);
    }

    auto add = [&](cvx::ExpSumFunction f, std::string name) {
        spec.inequalities.push_back(std::move(f));
        spec.inequality_names.push_back(std::move(name));
    };

    // Power tails: sum_{t >= 1} p_t * outage(rounds < t) <= u.
    for (int which = 0; which < 2; ++which) {
        cvx::ExpSumFunction f(n);
        for (std::size_t t = 1; t < T; ++t) {
            for (std::size_t mi = 0; mi < M; ++mi) {
                cvx::AffineForm e = unit(which == 0 ? lay.y(t) : lay.z(t));
                for (std::size_t tau = 0; tau < t; ++tau) e.coeffs[lay.x(mi, tau)] = 1.0;
                add_tangent(f, c[mi] / pmax, e);
            }
        }
        f.linear.coeffs[which == 0 ? lay.u1() : lay.u2()] -= 1.0 / pmax;
        add(std::move(f), which == 0 ? "weak_power_tail" : "strong_power_tail");
    }
    for (int which = 0; which < 2; ++which) {
        cvx::ExpSumFunction f(n);
        f.linear.coeffs[which == 0 ? lay.u1() : lay.u2()] = -1.0 / pmax;
        add(std::move(f), which == 0 ? "weak_tail_nonnegative" : "strong_tail_nonnegative");
    }

    {
        cvx::ExpSumFunction f(n);
        for (std::size_t mi = 0; mi < M; ++mi) {
            cvx::AffineForm e(n);
            for (std::size_t t = 0; t < T; ++t) e.coeffs[lay.x(mi, t)] = 1.0;
            add_tangent(f, c[mi] / delta2, e);
        }
        for (std::size_t t = 0; t < T; ++t) add_cosh(f, lay.z(t), proximal);
        f.linear.constant -= 1.0;
        add(std::move(f), "strong_outage");
    }

    const double floor = std::log(kFloorFraction * pmax);
    for (std::size_t t = 0; t < T; ++t) {
        const std::string tag = "[" + std::to_string(t + 1) + "]";
        cvx::ExpSumFunction ratio(n);
        ratio.linear.coeffs[lay.y(t)] = -1.0;
        ratio.linear.coeffs[lay.z(t)] = 1.0;
        ratio.linear.constant = std::log(params.weak_qos.target_snr);
        add(std::move(ratio), "power_ratio" + tag);

        cvx::ExpSumFunction cap(n);
        cap.add_exp(1.0 / pmax, unit(lay.y(t)));
        cap.add_exp(1.0 / pmax, unit(lay.z(t)));
        cap.linear.constant = -1.0;
        add(std::move(cap), "power_cap" + tag);

        cvx::ExpSumFunction fy(n), fz(n);
        fy.linear.coeffs[lay.y(t)] = -1.0;
        fy.linear.constant = floor;
        fz.linear.coeffs[lay.z(t)] = -1.0;
        fz.linear.constant = floor;
        add(std::move(fy), "weak_power_floor" + tag);
        add(std::move(fz), "strong_power_floor" + tag);
    }

    for (std::size_t mi = 0; mi < M; ++mi) {
        for (std::size_t t = 0; t < T; ++t) {
            // Tangent of x = -ln(1 + g e^z) at z0.
            const double p0 = std::exp(point.z[t]);
            const double kappa = g[mi] * p0 / (1.0 + g[mi] * p0);
            cvx::AffineForm eq(n);
            eq.coeffs[lay.x(mi, t)] = 1.0;
            eq.coeffs[lay.z(t)] = kappa;
            eq.constant = -point.x_at(mi, t) - kappa * point.z[t];
            spec.equalities.push_back(std::move(eq));
        }
    }
    return spec;
}

std::vector<double> strong_outage_chain(const ScaParams& params, const PowerSchedule& schedule) {
    const auto g = params.stehfest_rates();
    const auto c = cdf_coefficients(g.size());
    auto chain = raw_chain(schedule.p2, g, c);
    for (double& v : chain) v = std::clamp(v, 0.0, 1.0);
    return chain;
}

double approx_average_power(const ScaParams& params, const PowerSchedule& schedule) {
    const auto chain = strong_outage_chain(params, schedule);
    std::vector<double> retrans(schedule.rounds(), 1.0);
    for (std::size_t t = 1; t < schedule.rounds(); ++t) retrans[t] = chain[t - 1];
    return average_power(schedule, retrans);
}

double full_average_power(const ScaParams& params, const PowerSchedule& schedule) {
    const auto chain = strong_outage_chain(params, schedule);
    const double lambda1 = lambda_of(params.weak_link);
    std::vector<double> retrans(schedule.rounds(), 1.0);
    for (std::size_t t = 1; t < schedule.rounds(); ++t) {
        User1OutageInput in{schedule.prefix(t), lambda1, params.weak_qos.target_snr,
                            params.chebyshev_n, params.stehfest_m};
        const double out1 = user1_outage_closed(in).value;
        retrans[t] = retransmission_prob(out1, chain[t - 1]);
    }
    return average_power(schedule, retrans);
}

std::optional<std::string> violated_constraint(const ScaParams& params,
                                               const PowerSchedule& schedule) {
    if (schedule.rounds() != params.rounds) return "round_count";
    for (std::size_t t = 0; t < schedule.rounds(); ++t) {
        const std::string tag = "[" + std::to_string(t + 1) + "]";
        if (!(schedule.p1[t] > 0.0) || !(schedule.p2[t] > 0.0)) return "positive_power" + tag;
        if (schedule.p1[t] < params.weak_qos.target_snr * schedule.p2[t] * (1.0 - 1e-12))
            return "power_ratio" + tag;
        if (schedule.total(t) > params.p_max * (1.0 + 1e-12)) return "power_cap" + tag;
    }
    const auto chain = strong_outage_chain(params, schedule);
    if (chain.back() > params.strong_qos.max_outage * (1.0 + 1e-12)) return "strong_outage";
    return std::nullopt;
}

PowerSchedule max_reliability_schedule(const ScaParams& params) {
    const double gamma1 = params.weak_qos.target_snr;
    const double p2 = params.p_max / (1.0 + gamma1) * (1.0 - kRatioMargin);
    const double p1 = gamma1 * p2 * (1.0 + kRatioMargin);
    return PowerSchedule::uniform(params.rounds, p1, p2);
}

PowerSchedule default_start(const ScaParams& params) {
    auto s = PowerSchedule::uniform(params.rounds, 0.7 * params.p_max, 0.3 * params.p_max);
    if (!violated_constraint(params, s)) return s;
    return max_reliability_schedule(params);
}

ScaResult sca_solve(const ScaParams& params) { return sca_solve(params, default_start(params)); }

ScaResult sca_solve(const ScaParams& params, const PowerSchedule& init) {
    params.validate();
    if (auto v = violated_constraint(params, init))
        throw InfeasibleInit("sca_solve: initial schedule violates " + *v);

    const auto g = params.stehfest_rates();
    ScaResult res;
    res.schedule = init;
    res.objective = approx_average_power(params, init);
    res.trace.objective.push_back(res.objective);
    res.trace.status.push_back("init");

    cvx::SolverOptions opts;
    double proximal = kDefaultProximal;
    for (int it = 0; it < params.max_outer_iterations; ++it) {
        const auto point = cov_from_powers(res.schedule.p1, res.schedule.p2, g);
        const auto flat = point.flatten();
        opts.start = flat;
        bool accepted = false;
        for (int attempt = 0; attempt < kMaxProximalRetries; ++attempt) {
            const auto spec = build_subproblem(point, params, proximal);
            double viol = 0.0;
            for (const auto& f : spec.inequalities) viol = std::max(viol, f.value(flat));
            for (const auto& e : spec.equalities) viol = std::max(viol, std::abs(e.eval(flat)));
            const auto sol = cvx::solve(spec, opts);
            if (sol.status == cvx::SolveStatus::Infeasible)
                throw SubproblemInfeasible("sca_solve: subproblem " + std::to_string(it + 1) +
                                           " is infeasible");
            auto next = unflatten(sol.point, point.m, point.t).powers();
            const double obj = approx_average_power(params, next);
            if (violated_constraint(params, next) || !(obj <= res.objective)) {
                ++res.trace.rejected;
                proximal *= 4.0;
                continue;
            }
            const double gap = res.objective - obj;
            res.schedule = std::move(next);
            res.objective = obj;
            res.trace.objective.push_back(obj);
            res.trace.status.push_back(cvx::to_string(sol.status));
            res.trace.expansion_violation.push_back(viol);
            res.trace.newton_steps.push_back(sol.newton_steps);
            res.trace.proximal.push_back(proximal);
            proximal = std::max(proximal / 2.0, kMinProximal);
            accepted = true;
            if (gap < params.tolerance) res.trace.converged = true;
            break;
        }
        // A model this tight that still finds no descent means the point is stationary.
        if (!accepted) res.trace.converged = true;
        if (res.trace.converged) break;
    }
    return res;
}

namespace {

struct GridSetup {
    std::size_t t = 0;
    std::uint64_t per_user = 0;  // L^T
    std::vector<double> levels;
    std::vector<double> g;
    std::vector<double> c;
};

GridSetup grid_setup(const ScaParams& params, int levels) {
    params.validate();
    if (params.rounds > 2) throw std::invalid_argument("grid_oracle: T must be <= 2");
    if (levels < 1) throw std::invalid_argument("grid_oracle: L must be >= 1");
    GridSetup s;
    s.t = params.rounds;
    s.levels.resize(static_cast<std::size_t>(levels));
    for (int i = 1; i <= levels; ++i)
        s.levels[static_cast<std::size_t>(i - 1)] = params.p_max * i / levels;
    s.per_user = 1;
    for (std::size_t i = 0; i < s.t; ++i) s.per_user *= static_cast<std::uint64_t>(levels);
    s.g = params.stehfest_rates();
    s.c = cdf_coefficients(s.g.size());
    return s;
}

std::vector<double> decode(const GridSetup& s, std::uint64_t idx) {
    std::vector<double> v(s.t);
    const auto L = static_cast<std::uint64_t>(s.levels.size());
    for (std::size_t k = s.t; k-- > 0;) {
        v[k] = s.levels[idx % L];
        idx /= L;
    }
    return v;
}

// Objective at (p1 index, p2 index) or +inf when infeasible.
double grid_value(const ScaParams& params, const GridSetup& s, const std::vector<double>& p1,
                  const std::vector<double>& p2, const std::vector<double>& chain) {
    if (chain.back() > params.strong_qos.max_outage) return std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (std::size_t t = 0; t < s.t; ++t) {
        if (p1[t] < params.weak_qos.target_snr * p2[t]) return std::numeric_limits<double>::infinity();
        if (p1[t] + p2[t] > params.p_max * (1.0 + 1e-12)) return std::numeric_limits<double>::infinity();
        total += (p1[t] + p2[t]) * (t == 0 ? 1.0 : chain[t - 1]);
    }
    return total;
}

std::vector<double> clamped_chain(const GridSetup& s, const std::vector<double>& p2) {
    auto chain = raw_chain(p2, s.g, s.c);
    for (double& v : chain) v = std::clamp(v, 0.0, 1.0);
    return chain;
}

GridResult grid_result(const GridSetup& s, double best, std::uint64_t idx) {
    if (!std::isfinite(best))
        throw NoFeasiblePoint("grid_oracle: no grid point satisfies the constraints");
    GridResult r;
    r.schedule = PowerSchedule(decode(s, idx / s.per_user), decode(s, idx % s.per_user));
    r.objective = best;
    r.index = idx;
    return r;
}

}  // namespace

GridResult grid_oracle(const ScaParams& params, int levels) {
    const auto s = grid_setup(params, levels);
    const auto n2 = static_cast<std::int64_t>(s.per_user);
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_idx = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel
    {
        double local = std::numeric_limits<double>::infinity();
        std::uint64_t local_idx = std::numeric_limits<std::uint64_t>::max();
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < n2; ++j) {
            const auto p2 = decode(s, static_cast<std::uint64_t>(j));
            const auto chain = clamped_chain(s, p2);
            for (std::uint64_t i = 0; i < s.per_user; ++i) {
                const double v = grid_value(params, s, decode(s, i), p2, chain);
                const std::uint64_t idx = i * s.per_user + static_cast<std::uint64_t>(j);
                if (v < local || (v == local && idx < local_idx)) {
                    local = v;
                    local_idx = idx;
                }
            }
        }
#pragma omp critical
        if (local < best || (local == best && local_idx < best_idx)) {
            best = local;
            best_idx = local_idx;
        }
    }
    return grid_result(s, best, best_idx);
}

namespace reference {

GridResult grid_oracle(const ScaParams& params, int levels) {
    const auto s = grid_setup(params, levels);
    const std::uint64_t total = s.per_user * s.per_user;
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_idx = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const auto p1 = decode(s, idx / s.per_user);
        const auto p2 = decode(s, idx % s.per_user);
        const double v = grid_value(params, s, p1, p2, clamped_chain(s, p2));
        if (v < best) {
            best = v;
            best_idx = idx;
        }
    }
    return grid_result(s, best, best_idx);
}

}  // namespace reference

bool rounds_feasible(const ScaParams& params) {
    params.validate();
    const auto start = max_reliability_schedule(params);
    const auto point = cov_from_powers(start.p1, start.p2, params.stehfest_rates());
    const auto spec = build_subproblem(point, params);
    cvx::SolverOptions opts;
    opts.start = point.flatten();
    return cvx::find_feasible(spec, opts).status == cvx::SolveStatus::Optimal;
}

MinRoundsResult min_rounds(const ScaParams& params, std::size_t t_max) {
    if (t_max < 1) throw std::invalid_argument("min_rounds: T_max must be >= 1");
    MinRoundsResult out;
    auto feasible = [&](std::size_t t) {
        const bool ok = rounds_feasible(params.with_rounds(t));
        out.evaluations.emplace_back(t, ok);
        return ok;
    };
    if (!feasible(t_max))
        throw RoundsInfeasible("min_rounds: infeasible even with " + std::to_string(t_max) +
                               " rounds");
    std::size_t lo = 1, hi = t_max;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    for (const auto& [ta, fa] : out.evaluations)
        for (const auto& [tb, fb] : out.evaluations)
            if (ta < tb && fa && !fb)
                throw std::logic_error("min_rounds: feasible at T = " + std::to_string(ta) +
                                       " but not at T = " + std::to_string(tb));
    out.rounds = lo;
    out.solution = sca_solve(params.with_rounds(lo));
    return out;
}

std::optional<PowerSchedule> equal_power_schedule(const ScaParams& params, double ratio) {
    params.validate();
    if (!(ratio >= params.weak_qos.target_snr * (1.0 - 1e-12)))
        throw std::invalid_argument("equal_power_schedule: ratio below gamma1");
    const double gamma1 = params.weak_qos.target_snr;
    ratio = std::max(ratio, gamma1);
    const double p2_max = params.p_max / (1.0 + ratio);
    auto make = [&](double p2) { return PowerSchedule::uniform(params.rounds, ratio * p2, p2); };
    auto meets = [&](double p2) {
        return strong_outage_chain(params, make(p2)).back() <= params.strong_qos.max_outage;
    };
    if (!meets(p2_max)) return std::nullopt;
    double lo = 0.0, hi = p2_max;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (meets(mid) ? hi : lo) = mid;
    }
    return make(hi);
}

}  // namespace harqnoma
