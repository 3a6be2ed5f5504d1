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

#ifndef HARQNOMA_CONVEX_SOLVER_HPP
#define HARQNOMA_CONVEX_SOLVER_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Small dense solver for programs whose functions are signed sums of
// exponentials of affine forms plus an affine part:
//
//   f(x) = sum_i w_i exp(a_i . x + c_i) + l . x + l0
//
// A function is accepted as convex only when every term with w_i < 0 has a
// constant exponent (a_i == 0).
namespace harqnoma::cvx {

struct AffineForm {
    std::vector<double> coeffs;
    double constant = 0.0;

    AffineForm() = default;
    explicit AffineForm(std::size_t n, double c = 0.0) : coeffs(n, 0.0), constant(c) {}

    std::size_t dimension() const { return coeffs.size(); }
    double eval(std::span<const double> x) const;
    bool is_constant() const;
};

struct ExpTerm {
    double weight = 0.0;
    AffineForm exponent;
};

struct ExpSumFunction {
    std::vector<ExpTerm> terms;
    AffineForm linear;

    ExpSumFunction() = default;
    explicit ExpSumFunction(std::size_t n) : linear(n) {}

    std::size_t dimension() const { return linear.dimension(); }
    void add_exp(double weight, AffineForm exponent);

    double value(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const;
    std::vector<double> hessian(std::span<const double> x) const;  // row-major n x n
    bool convex_certified() const;
};

struct SubproblemSpec {
    std::size_t variables = 0;
    ExpSumFunction objective;
    std::vector<ExpSumFunction> inequalities;  // each f_i(x) <= 0
    std::vector<AffineForm> equalities;        // each a . x + c == 0
    std::vector<std::string> inequality_names;  // optional, for diagnostics
};

// Thrown by solve() for a spec that is not certified convex, or whose
// function dimensions disagree with `variables`.
class NonConvexSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SolveStatus { Optimal, Infeasible, MaxIterations };

const char* to_string(SolveStatus status);

struct SolverOptions {
    double kkt_tol = 1e-7;
    double feas_tol = 1e-8;
    int max_newton_steps = 200;  // per centering
    double mu_start = 1.0;
    double mu_end = 1e-8;
    double mu_factor = 10.0;
    double armijo = 0.25;
    std::vector<double> start;  // optional starting point in the original space
};

struct Solution {
    std::vector<double> point;
    double objective_value = 0.0;
    SolveStatus status = SolveStatus::Infeasible;
    double kkt_residual = 0.0;
    double max_violation = 0.0;
    int newton_steps = 0;
    // Newton decrement (lambda^2 / 2) at each accepted step, one list per centering.
    std::vector<std::vector<double>> decrements;
};

// Affine reparametrization x = offset + basis * z onto the solution set of the
// equalities.
struct EqualityElimination {
    SubproblemSpec reduced;
    std::vector<double> offset;  // full dimension
    std::vector<double> basis;   // row-major, full x reduced, orthonormal columns
    std::size_t full_dim = 0;
    std::size_t reduced_dim = 0;
    bool consistent = true;

    std::vector<double> lift(std::span<const double> z) const;
    // Orthogonal projection of a full-space point onto the affine set.
    std::vector<double> project(std::span<const double> x) const;
};

EqualityElimination eliminate_equalities(const SubproblemSpec& spec);

/// Log-barrier path following: minimizes f0 - mu * sum log(-f_i) for mu from
/// mu_start down to mu_end by mu_factor, each centering by damped Newton with
/// backtracking. A strictly feasible start comes from options.start when it
/// qualifies, otherwise from a phase-1 problem (minimize s subject to
/// f_i(x) <= s). Equalities are eliminated first.
Solution solve(const SubproblemSpec& spec, const SolverOptions& options = {});

// Phase-1 only: Optimal with a strictly feasible point, or Infeasible.
Solution find_feasible(const SubproblemSpec& spec, const SolverOptions& options = {});

}  // namespace harqnoma::cvx

#endif  // HARQNOMA_CONVEX_SOLVER_HPP
