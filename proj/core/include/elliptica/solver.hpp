// Copyright 2026 The Elliptica Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

#include <optional>
#include <vector>

#include "elliptica/field.hpp"
#include "elliptica/nonlocal.hpp"

namespace elliptica {

/// Parameters of the relaxation scheme for -lap(u) + lambda*G(u) = f with
/// zero Dirichlet boundary. `sigma` is the standard deviation of the
/// Gaussian realizing G.
struct SolverConfig {
    double lambda = 0.0; ///< weight of the nonlocal term, >= 0
    double tau = 0.1;    ///< relaxation step, > 0
    int max_iter = 300;  ///< >= 1
    double tol = 1e-4;   ///< stopping threshold on the residual norm, > 0
    double sigma = 1.0;  ///< Gaussian std deviation, > 0

    /// Print a one-line note to stderr when tau exceeds the contraction
    /// step bound (the iteration may still converge; the bound is
    /// sufficient, not necessary).
    bool warn_outside_bound = true;
};

/// Convergence trace of one relaxation run. `residual_history[n]` is the
/// Euclidean norm of the residual f + lap(u) - lambda*G(u) evaluated at the
/// n-th iterate, over all sites.
struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history;
    bool converged = false;
    double final_residual = 0.0;
};

struct SolveResult {
    Field2D field;
    SolveReport report;
};

/// Fixed-point relaxation for -lap(u) + lambda*G(u) = f.
///
/// Starts from u = f with the boundary zeroed and iterates
///   u <- u + tau * (f + lap(u) - lambda*G(u)),
/// re-imposing the zero boundary after every update, until the residual norm
/// drops below `tol` or `max_iter` sweeps have run. Throws DivergenceError
/// if the residual turns non-finite.
SolveResult solve_pde(const Field2D& f, const SolverConfig& config);

/// Same scheme started from an explicit initial field instead of f.
SolveResult solve_pde(const Field2D& f, const SolverConfig& config,
                      const Field2D& initial_guess);

/// Relaxation for the plain Poisson problem -lap(w) = f (the supersolution
/// of the nonlocal equation). `config.lambda` and `config.sigma` are
/// ignored.
SolveResult solve_poisson(const Field2D& f, const SolverConfig& config);

/// Extreme eigenvalues of the negative five-point Laplacian restricted to
/// the interior of a rows x cols grid with zero Dirichlet boundary, from the
/// closed-form sine spectrum. `lambda_min` plays the role of the inverse
/// squared Poincare constant, `lambda_max` of the operator norm.
struct DirichletSpectrum {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

DirichletSpectrum dirichlet_spectrum(std::size_t rows, std::size_t cols);

/// Step-size bound certifying contraction of the relaxation map:
///   tau < 2 / (|lap| + lambda*L_G)^2 * (lambda_min - lambda*L_G),
/// valid only while lambda*L_G < lambda_min. When that positivity condition
/// fails, `tau_max` is empty: the certificate is infeasible (the iteration
/// may converge regardless).
struct StepBound {
    double inv_poincare_sq = 0.0; ///< smallest interior eigenvalue
    double laplacian_norm = 0.0;  ///< largest interior eigenvalue
    double lipschitz_g = 1.0;     ///< Lipschitz constant used for G
    std::optional<double> tau_max;

    bool feasible() const noexcept { return tau_max.has_value(); }
};

/// `lipschitz_g` defaults to 1, the norm bound of a unit-mass kernel;
/// callers may pass a measured operator norm instead. Requires at least
/// 3 sites per axis.
StepBound stable_step_bound(std::size_t rows, std::size_t cols, double lambda,
                            double lipschitz_g = 1.0);

/// Dense reference solve of the same interior system the relaxation scheme
/// converges to: assembles v -> -lap(v) + lambda*G(v) column by column on
/// the interior unknowns (boundary pinned to zero) and solves it directly.
///
/// Guarded to grids with at most 4096 interior sites; throws
/// std::invalid_argument past the guard and SingularSystemError when the
/// computed solution fails to reproduce f.
Field2D direct_solve_oracle(const Field2D& f, double lambda,
                            const KernelSpec& kernel);

/// Gradient-flow energy of the scheme,
///   1/2 sum |grad u|^2 + lambda/2 <u, G(u)> - <f, u>,
/// with forward-difference gradients. Its first variation at interior sites
/// is -lap(u) + lambda*G(u) - f because the assembled G is symmetric.
double energy(const Field2D& u, const Field2D& f, double lambda,
              const KernelSpec& kernel);

} // namespace elliptica
