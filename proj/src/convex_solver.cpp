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

#include "harqnoma/convex_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace harqnoma::cvx {

double AffineForm::eval(std::span<const double> x) const {
    double acc = constant;
    for (std::size_t j = 0; j < coeffs.size(); ++j) acc += coeffs[j] * x[j];
    return acc;
}

bool AffineForm::is_constant() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](double a) { return a == 0.0; });
}

void ExpSumFunction::add_exp(double weight, AffineForm exponent) {
    if (exponent.dimension() != dimension())
        throw std::invalid_argument("add_exp: exponent dimension mismatch");
    terms.push_back({weight, std::move(exponent)});
}

double ExpSumFunction::value(std::span<const double> x) const {
    double acc = linear.eval(x);
    for (const auto& t : terms) acc += t.weight * std::exp(t.exponent.eval(x));
    return acc;
}

std::vector<double> ExpSumFunction::gradient(std::span<const double> x) const {
    std::vector<double> g = linear.coeffs;
    for (const auto& t : terms) {
        const double e = t.weight * std::exp(t.exponent.eval(x));
        for (std::size_t j = 0; j < g.size(); ++j) g[j] += e * t.exponent.coeffs[j];
    }
    return g;
}

std::vector<double> ExpSumFunction::hessian(std::span<const double> x) const {
    const std::size_t n = dimension();
    std::vector<double> h(n * n, 0.0);
    for (const auto& t : terms) {
        const double e = t.weight * std::exp(t.exponent.eval(x));
        const auto& a = t.exponent.coeffs;
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) h[i * n + j] += e * a[i] * a[j];
        }
    }
    return h;
}

bool ExpSumFunction::convex_certified() const {
    return std::all_of(terms.begin(), terms.end(), [](const ExpTerm& t) {
        return t.weight >= 0.0 || t.exponent.is_constant();
    });
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::MaxIterations: return "max_iterations";
    }
    return "unknown";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// f(x) = w . exp(A x + c) + l . x + l0
struct DenseFn {
    MatrixXd a;
    VectorXd c;
    VectorXd w;
    VectorXd l;
    double l0 = 0.0;

    double value(const VectorXd& x) const {
        double v = l.dot(x) + l0;
        if (w.size() > 0) v += w.dot((a * x + c).array().exp().matrix());
        return v;
    }

    // Value, gradient and Hessian in one pass.
    double eval(const VectorXd& x, VectorXd& g, MatrixXd& h) const {
        g = l;
        h.setZero(x.size(), x.size());
        double v = l.dot(x) + l0;
        if (w.size() == 0) return v;
        const VectorXd e = w.cwiseProduct((a * x + c).array().exp().matrix());
        v += e.sum();
        g.noalias() += a.transpose() * e;
        h.noalias() += a.transpose() * e.asDiagonal() * a;
        return v;
    }
};

DenseFn to_dense(const ExpSumFunction& f) {
    const auto n = static_cast<Eigen::Index>(f.dimension());
    const auto k = static_cast<Eigen::Index>(f.terms.size());
    DenseFn d;
    d.a.resize(k, n);
    d.c.resize(k);
    d.w.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto& t = f.terms[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) d.a(i, j) = t.exponent.coeffs[static_cast<std::size_t>(j)];
        d.c(i) = t.exponent.constant;
        d.w(i) = t.weight;
    }
    d.l = Eigen::Map<const VectorXd>(f.linear.coeffs.data(), n);
    d.l0 = f.linear.constant;
    return d;
}

// Dense problem after elimination: minimize f0 subject to fi <= 0.
struct DenseProblem {
    DenseFn objective;
    std::vector<DenseFn> ineq;
    Eigen::Index dim = 0;

    double max_ineq(const VectorXd& x) const {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& f : ineq) m = std::max(m, f.value(x));
        return m;
    }
};

struct BarrierResult {
    VectorXd x;
    bool hit_step_cap = false;
    bool stopped_early = false;
    int steps = 0;
    double mu = 0.0;
    std::vector<std::vector<double>> decrements;
};

// Solves H d = -g with LDLT, adding a ridge when H is not positive definite.
VectorXd newton_direction(MatrixXd h, const VectorXd& g) {
    const double scale = 1.0 + h.diagonal().cwiseAbs().maxCoeff();
    double ridge = 0.0;
    for (int attempt = 0; attempt < 30; ++attempt) {
        if (ridge > 0.0) h.diagonal().array() += ridge;
        Eigen::LDLT<MatrixXd> ldlt(h);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive() &&
            (ldlt.vectorD().array() > 1e-14 * scale).all()) {
            VectorXd d = ldlt.solve(-g);
            if (d.allFinite()) return d;
        }
        if (ridge > 0.0) h.diagonal().array() -= ridge;
        ridge = ridge == 0.0 ? 1e-12 * scale : ridge * 10.0;
    }
    return -g / scale;
}

// Barrier objective F = f0 - mu sum log(-fi); +inf outside the strict interior.
double barrier_value(const DenseProblem& p, const VectorXd& x, double mu) {
    double v = p.objective.value(x);
    for (const auto& f : p.ineq) {
        const double fi = f.value(x);
        if (!(fi < 0.0)) return std::numeric_limits<double>::infinity();
        v -= mu * std::log(-fi);
    }
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

double barrier_derivatives(const DenseProblem& p, const VectorXd& x, double mu, VectorXd& g,
                           MatrixXd& h) {
    double v = p.objective.eval(x, g, h);
    VectorXd gi;
    MatrixXd hi;
    for (const auto& f : p.ineq) {
        const double fi = f.eval(x, gi, hi);
        const double inv = -1.0 / fi;
        v -= mu * std::log(-fi);
        g.noalias() += (mu * inv) * gi;
        h.noalias() += (mu * inv) * hi + (mu * inv * inv) * gi * gi.transpose();
    }
    return v;
}

template <typename Stop>
BarrierResult path_follow(const DenseProblem& p, VectorXd x, const SolverOptions& opt,
                          const Stop& stop_early) {
    BarrierResult r;
    const bool constrained = !p.ineq.empty();
    double mu = opt.mu_start;
    VectorXd g;
    MatrixXd h;
    while (true) {
        std::vector<double> decs;
        int steps = 0;
        for (; steps < opt.max_newton_steps; ++steps) {
            const double fx = barrier_derivatives(p, x, mu, g, h);
            const VectorXd d = newton_direction(h, g);
            const double slope = g.dot(d);
            const double dec = -0.5 * slope;
            // A tiny decrement alone is not enough next to an active constraint,
            // where the barrier Hessian is huge; the gradient must be small too.
            const bool centered = !(dec > 1e-12 * (1.0 + std::abs(fx))) &&
                                  g.cwiseAbs().maxCoeff() <= 0.1 * opt.kkt_tol;
            if (centered || !(slope < 0.0) || !(dec > 0.0)) break;
            double t = 1.0;
            double ft = barrier_value(p, x + t * d, mu);
            int halvings = 0;
            while ((!std::isfinite(ft) || ft > fx + opt.armijo * t * slope) && halvings < 80) {
                t *= 0.5;
                ++halvings;
                ft = barrier_value(p, x + t * d, mu);
            }
            if (halvings == 80) break;
            decs.push_back(dec);
            x += t * d;
            ++r.steps;
            if (stop_early(x)) {
                r.decrements.push_back(std::move(decs));
                r.x = std::move(x);
                r.mu = mu;
                r.stopped_early = true;
                return r;
            }
        }
        if (steps == opt.max_newton_steps) r.hit_step_cap = true;
        r.decrements.push_back(std::move(decs));
        if (!constrained || mu <= opt.mu_end * (1.0 + 1e-12)) break;
        mu = std::max(mu / opt.mu_factor, opt.mu_end);
    }
    r.x = std::move(x);
    r.mu = constrained ? mu : 0.0;
    return r;
}

struct Phase1Result {
    bool feasible = false;
    VectorXd x;
    double slack = 0.0;
    int steps = 0;
};

Phase1Result phase1(const DenseProblem& p, const VectorXd& x0, const SolverOptions& opt) {
    Phase1Result out;
    if (p.ineq.empty()) {
        out.feasible = true;
        out.x = x0;
        return out;
    }
    const double worst = p.max_ineq(x0);
    if (worst < 0.0) {
        out.feasible = true;
        out.x = x0;
        out.slack = worst;
        return out;
    }
    const Eigen::Index n = p.dim;
    // Variables (x, s): minimize s subject to f_i(x) - s <= 0 and -1 - s <= 0.
    DenseProblem q;
    q.dim = n + 1;
    q.objective.a.resize(0, n + 1);
    q.objective.l = VectorXd::Zero(n + 1);
    q.objective.l(n) = 1.0;
    for (const auto& f : p.ineq) {
        DenseFn e;
        e.a.resize(f.a.rows(), n + 1);
        e.a.leftCols(n) = f.a;
        e.a.col(n).setZero();
        e.c = f.c;
        e.w = f.w;
        e.l.resize(n + 1);
        e.l.head(n) = f.l;
        e.l(n) = -1.0;
        e.l0 = f.l0;
        q.ineq.push_back(std::move(e));
    }
    DenseFn floor;
    floor.a.resize(0, n + 1);
    floor.l = VectorXd::Zero(n + 1);
    floor.l(n) = -1.0;
    floor.l0 = -1.0;
    q.ineq.push_back(std::move(floor));

    VectorXd z(n + 1);
    z.head(n) = x0;
    z(n) = std::max(worst, 0.0) + 1.0;
    const auto res = path_follow(q, z, opt, [&](const VectorXd& v) {
        return v(n) < 0.0 && p.max_ineq(v.head(n)) < 0.0;
    });
    out.steps = res.steps;
    out.x = res.x.head(n);
    out.slack = p.max_ineq(out.x);
    out.feasible = out.slack < 0.0;
    return out;
}

void check_spec(const SubproblemSpec& spec) {
    const std::size_t n = spec.variables;
    auto check = [&](const ExpSumFunction& f, const std::string& what) {
        if (f.dimension() != n) throw NonConvexSpec(what + ": dimension mismatch");
        for (const auto& t : f.terms)
            if (t.exponent.dimension() != n) throw NonConvexSpec(what + ": dimension mismatch");
        if (!f.convex_certified())
            throw NonConvexSpec(what + ": negative-weight exponential with a variable exponent");
    };
    check(spec.objective, "objective");
    for (std::size_t i = 0; i < spec.inequalities.size(); ++i) {
        const std::string name = i < spec.inequality_names.size() ? spec.inequality_names[i]
                                                                  : std::to_string(i);
        check(spec.inequalities[i], "inequality " + name);
    }
    for (const auto& e : spec.equalities)
        if (e.dimension() != n) throw NonConvexSpec("equality: dimension mismatch");
}

ExpSumFunction reduce(const ExpSumFunction& f, const MatrixXd& basis, const VectorXd& offset) {
    const auto r = basis.cols();
    auto map_affine = [&](const AffineForm& a) {
        const Eigen::Map<const VectorXd> coeffs(a.coeffs.data(), static_cast<Eigen::Index>(a.coeffs.size()));
        AffineForm out(static_cast<std::size_t>(r), a.constant + coeffs.dot(offset));
        const VectorXd reduced = basis.transpose() * coeffs;
        for (Eigen::Index j = 0; j < r; ++j) {
            // Exact zeros keep constant exponents certifiable after the map.
            out.coeffs[static_cast<std::size_t>(j)] = a.is_constant() ? 0.0 : reduced(j);
        }
        return out;
    };
    ExpSumFunction out(static_cast<std::size_t>(r));
    out.linear = map_affine(f.linear);
    for (const auto& t : f.terms) out.terms.push_back({t.weight, map_affine(t.exponent)});
    return out;
}

DenseProblem to_dense(const SubproblemSpec& spec) {
    DenseProblem p;
    p.dim = static_cast<Eigen::Index>(spec.variables);
    p.objective = to_dense(spec.objective);
    for (const auto& f : spec.inequalities) p.ineq.push_back(to_dense(f));
    return p;
}

double kkt_residual(const DenseProblem& p, const VectorXd& x, double mu) {
    VectorXd g0, gi;
    MatrixXd h;
    p.objective.eval(x, g0, h);
    VectorXd stat = g0;
    for (const auto& f : p.ineq) {
        const double fi = f.eval(x, gi, h);
        stat += (mu / -fi) * gi;
    }
    const double g0n = g0.size() ? g0.cwiseAbs().maxCoeff() : 0.0;
    const double sn = stat.size() ? stat.cwiseAbs().maxCoeff() : 0.0;
    return std::max(sn / (1.0 + g0n), mu);
}

}  // namespace

std::vector<double> EqualityElimination::lift(std::span<const double> z) const {
    std::vector<double> x = offset;
    for (std::size_t i = 0; i < full_dim; ++i)
        for (std::size_t j = 0; j < reduced_dim; ++j) x[i] += basis[i * reduced_dim + j] * z[j];
    return x;
}

std::vector<double> EqualityElimination::project(std::span<const double> x) const {
    std::vector<double> z(reduced_dim, 0.0);
    for (std::size_t j = 0; j < reduced_dim; ++j)
        for (std::size_t i = 0; i < full_dim; ++i) z[j] += basis[i * reduced_dim + j] * (x[i] - offset[i]);
    return z;
}

EqualityElimination eliminate_equalities(const SubproblemSpec& spec) {
    const auto n = static_cast<Eigen::Index>(spec.variables);
    const auto m = static_cast<Eigen::Index>(spec.equalities.size());
    EqualityElimination out;
    out.full_dim = spec.variables;

    MatrixXd basis;
    VectorXd offset = VectorXd::Zero(n);
    if (m == 0) {
        basis = MatrixXd::Identity(n, n);
    } else {
        MatrixXd a(m, n);
        VectorXd b(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto& e = spec.equalities[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = e.coeffs[static_cast<std::size_t>(j)];
            b(i) = -e.constant;
        }
        // Q R of A^T: the first rank columns of Q span the row space, the rest the nullspace.
        Eigen::ColPivHouseholderQR<MatrixXd> qr(a.transpose());
        const Eigen::Index rank = qr.rank();
        const MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, n);
        basis = q.rightCols(n - rank);
        offset = a.completeOrthogonalDecomposition().solve(b);
        const double resid = (a * offset - b).cwiseAbs().maxCoeff();
        out.consistent = resid <= 1e-10 * (1.0 + b.cwiseAbs().maxCoeff());
    }
    out.reduced_dim = static_cast<std::size_t>(basis.cols());
    out.offset.assign(offset.data(), offset.data() + n);
    out.basis.resize(out.full_dim * out.reduced_dim);
    for (std::size_t i = 0; i < out.full_dim; ++i)
        for (std::size_t j = 0; j < out.reduced_dim; ++j)
            out.basis[i * out.reduced_dim + j] =
                basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

    out.reduced.variables = out.reduced_dim;
    out.reduced.objective = reduce(spec.objective, basis, offset);
    for (const auto& f : spec.inequalities) out.reduced.inequalities.push_back(reduce(f, basis, offset));
    out.reduced.inequality_names = spec.inequality_names;
    return out;
}

namespace {

Solution finish(const SubproblemSpec& spec, const EqualityElimination& elim, const VectorXd& z) {
    Solution s;
    s.point = elim.lift(std::span<const double>(z.data(), static_cast<std::size_t>(z.size())));
    s.objective_value = spec.objective.value(s.point);
    double viol = 0.0;
    for (const auto& f : spec.inequalities) viol = std::max(viol, f.value(s.point));
    for (const auto& e : spec.equalities) viol = std::max(viol, std::abs(e.eval(s.point)));
    s.max_violation = viol;
    return s;
}

struct Prepared {
    EqualityElimination elim;
    DenseProblem dense;
    VectorXd start;
};

Prepared prepare(const SubproblemSpec& spec, const SolverOptions& opt) {
    check_spec(spec);
    Prepared p{eliminate_equalities(spec), {}, {}};
    p.dense = to_dense(p.elim.reduced);
    p.start = VectorXd::Zero(p.dense.dim);
    if (opt.start.size() == spec.variables) {
        const auto z = p.elim.project(opt.start);
        p.start = Eigen::Map<const VectorXd>(z.data(), static_cast<Eigen::Index>(z.size()));
    }
    return p;
}

}  // namespace

Solution find_feasible(const SubproblemSpec& spec, const SolverOptions& options) {
    const auto prep = prepare(spec, options);
    if (!prep.elim.consistent) {
        Solution s;
        s.status = SolveStatus::Infeasible;
        return s;
    }
    const auto ph = phase1(prep.dense, prep.start, options);
    Solution s = finish(spec, prep.elim, ph.x);
    s.newton_steps = ph.steps;
    s.status = ph.feasible ? SolveStatus::Optimal : SolveStatus::Infeasible;
    return s;
}

Solution solve(const SubproblemSpec& spec, const SolverOptions& options) {
    const auto prep = prepare(spec, options);
    Solution s;
    if (!prep.elim.consistent) {
        s.status = SolveStatus::Infeasible;
        return s;
    }
    const auto& p = prep.dense;
    if (p.dim == 0) {
        s = finish(spec, prep.elim, VectorXd::Zero(0));
        s.status = s.max_violation <= options.feas_tol ? SolveStatus::Optimal : SolveStatus::Infeasible;
        return s;
    }
    const auto ph = phase1(p, prep.start, options);
    if (!ph.feasible) {
        s = finish(spec, prep.elim, ph.x);
        s.newton_steps = ph.steps;
        s.status = SolveStatus::Infeasible;
        return s;
    }
    const auto res = path_follow(p, ph.x, options, [](const VectorXd&) { return false; });
    s = finish(spec, prep.elim, res.x);
    s.newton_steps = ph.steps + res.steps;
    s.decrements = res.decrements;
    s.kkt_residual = kkt_residual(p, res.x, res.mu);
    const bool ok = s.kkt_residual <= options.kkt_tol && s.max_violation <= options.feas_tol;
    s.status = ok ? SolveStatus::Optimal : SolveStatus::MaxIterations;
    return s;
}

}  // namespace harqnoma::cvx
