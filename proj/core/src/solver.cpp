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

#include "elliptica/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "elliptica/errors.hpp"

namespace elliptica {

namespace {

constexpr std::size_t kDenseOracleSiteLimit = 4096;

void check_config(const SolverConfig& config) {
    if (!(config.tau > 0.0) || !std::isfinite(config.tau)) {
        throw std::invalid_argument("solver: tau must be positive");
    }
    if (!(config.tol > 0.0)) {
        throw std::invalid_argument("solver: tol must be positive");
    }
    if (config.max_iter < 1) {
        throw std::invalid_argument("solver: max_iter must be >= 1");
    }
    if (config.lambda < 0.0 || !std::isfinite(config.lambda)) {
        throw std::invalid_argument("solver: lambda must be nonnegative");
    }
    if (!(config.sigma > 0.0)) {
        throw std::invalid_argument("solver: sigma must be positive");
    }
}

void warn_if_outside_bound(const Field2D& f, const SolverConfig& config,
                           double lambda) {
    if (!config.warn_outside_bound) {
        return;
    }
    const StepBound bound = stable_step_bound(f.rows(), f.cols(), lambda);
    if (!bound.feasible()) {
        std::fprintf(stderr,
                     "elliptica: warning: no contraction step bound exists for "
                     "lambda=%g on a %zux%zu grid (lambda*L_G=%g >= %g); "
                     "iterating anyway, the bound is sufficient but not "
                     "necessary\n",
                     lambda, f.rows(), f.cols(), lambda * bound.lipschitz_g,
                     bound.inv_poincare_sq);
    } else if (config.tau > *bound.tau_max) {
        std::fprintf(stderr,
                     "elliptica: warning: tau=%g exceeds the contraction step "
                     "bound %g; iterating anyway, the bound is sufficient but "
                     "not necessary\n",
                     config.tau, *bound.tau_max);
    }
}

// Shared relaxation loop. With `with_nonlocal` false the nonlocal term is
// skipped entirely, which makes the lambda = 0 path of solve_pde bitwise
// identical to solve_poisson.
SolveResult relax(const Field2D& f, const SolverConfig& config,
                  const Field2D* initial_guess, bool with_nonlocal) {
    check_config(config);
    if (f.rows() < 3 || f.cols() < 3) {
        throw std::invalid_argument("solver: grid must be at least 3x3");
    }

    const std::size_t rows = f.rows();
    const std::size_t cols = f.cols();
    const std::size_t n = f.size();
    const double lambda = with_nonlocal ? config.lambda : 0.0;

    warn_if_outside_bound(f, config, lambda);

    Field2D u = initial_guess ? *initial_guess : f;
    if (!u.same_shape(f)) {
        throw std::invalid_argument("solver: initial guess shape mismatch");
    }
    enforce_dirichlet_in_place(u);

    KernelSpec kernel;
    Field2D conv;
    Field2D scratch;
    if (with_nonlocal) {
        kernel = make_gaussian_kernel(config.sigma);
        conv = Field2D(rows, cols);
        scratch = Field2D(rows, cols);
    }
    Field2D lap(rows, cols);

    SolveReport report;
    report.residual_history.reserve(
        static_cast<std::size_t>(std::min(config.max_iter, 1 << 20)));

    const double tau = config.tau;
    const double* fp = f.data();
    double* up = u.data();
    const double* lp = lap.data();
    const double* gp = with_nonlocal ? conv.data() : nullptr;

    for (int it = 1; it <= config.max_iter; ++it) {
        laplacian_into(u, lap);
        double sq = 0.0;
        if (with_nonlocal) {
            gaussian_convolve_into(u, kernel, scratch, conv);
            for (std::size_t idx = 0; idx < n; ++idx) {
                const double r = fp[idx] + lp[idx] - lambda * gp[idx];
                up[idx] += tau * r;
                sq += r * r;
            }
        } else {
            for (std::size_t idx = 0; idx < n; ++idx) {
                const double r = fp[idx] + lp[idx];
                up[idx] += tau * r;
                sq += r * r;
            }
        }
        enforce_dirichlet_in_place(u);

        const double res_norm = std::sqrt(sq);
        report.residual_history.push_back(res_norm);
        if (!std::isfinite(res_norm)) {
            throw DivergenceError(it);
        }
        if (res_norm < config.tol) {
            report.converged = true;
            break;
        }
    }

    report.iterations = static_cast<int>(report.residual_history.size());
    report.final_residual =
        report.residual_history.empty() ? 0.0 : report.residual_history.back();
    return {std::move(u), std::move(report)};
}

} // namespace

SolveResult solve_pde(const Field2D& f, const SolverConfig& config) {
    return relax(f, config, nullptr, config.lambda > 0.0);
}

SolveResult solve_pde(const Field2D& f, const SolverConfig& config,
                      const Field2D& initial_guess) {
    return relax(f, config, &initial_guess, config.lambda > 0.0);
}

SolveResult solve_poisson(const Field2D& f, const SolverConfig& config) {
    return relax(f, config, nullptr, false);
}

DirichletSpectrum dirichlet_spectrum(std::size_t rows, std::size_t cols) {
    if (rows < 3 || cols < 3) {
        throw std::invalid_argument("dirichlet_spectrum: grid must be at least 3x3");
    }
    // Sine spectrum of the interior m x n stencil matrix: eigenvalues
    // 4 [sin^2(p pi / (2(m+1))) + sin^2(q pi / (2(n+1)))], p = 1..m, q = 1..n.
    const double m = static_cast<double>(rows - 2);
    const double n = static_cast<double>(cols - 2);
    const double pi = std::numbers::pi;
    auto sin_sq = [](double x) {
        const double s = std::sin(x);
        return s * s;
    };
    DirichletSpectrum spectrum;
    spectrum.lambda_min =
        4.0 * (sin_sq(pi / (2.0 * (m + 1.0))) + sin_sq(pi / (2.0 * (n + 1.0))));
    spectrum.lambda_max = 4.0 * (sin_sq(m * pi / (2.0 * (m + 1.0))) +
                                 sin_sq(n * pi / (2.0 * (n + 1.0))));
    return spectrum;
}

StepBound stable_step_bound(std::size_t rows, std::size_t cols, double lambda,
                            double lipschitz_g) {
    if (lambda < 0.0 || lipschitz_g < 0.0) {
        throw std::invalid_argument("stable_step_bound: lambda and L_G must be nonnegative");
    }
    const DirichletSpectrum spectrum = dirichlet_spectrum(rows, cols);
    StepBound bound;
    bound.inv_poincare_sq = spectrum.lambda_min;
    bound.laplacian_norm = spectrum.lambda_max;
    bound.lipschitz_g = lipschitz_g;
    const double gap = spectrum.lambda_min - lambda * lipschitz_g;
    if (gap > 0.0) {
        const double total = spectrum.lambda_max + lambda * lipschitz_g;
        bound.tau_max = 2.0 * gap / (total * total);
    }
    return bound;
}

Field2D direct_solve_oracle(const Field2D& f, double lambda,
                            const KernelSpec& kernel) {
    if (f.rows() < 3 || f.cols() < 3) {
        throw std::invalid_argument("direct_solve_oracle: grid must be at least 3x3");
    }
    if (lambda < 0.0 || !std::isfinite(lambda)) {
        throw std::invalid_argument("direct_solve_oracle: lambda must be nonnegative");
    }
    const std::size_t rows = f.rows();
    const std::size_t cols = f.cols();
    const std::size_t mi = rows - 2;
    const std::size_t ni = cols - 2;
    const std::size_t unknowns = mi * ni;
    if (unknowns > kDenseOracleSiteLimit) {
        throw std::invalid_argument(
            "direct_solve_oracle: " + std::to_string(unknowns) +
            " interior sites exceed the dense-solve limit of " +
            std::to_string(kDenseOracleSiteLimit));
    }

    const bool with_nonlocal = lambda > 0.0;
    Eigen::MatrixXd A(unknowns, unknowns);
    Field2D impulse(rows, cols);
    Field2D lap(rows, cols);
    Field2D conv(rows, cols);
    Field2D scratch(rows, cols);

    // Column k of the interior operator: apply -lap + lambda*G to the unit
    // impulse at interior site k (boundary held at zero on both sides).
    std::size_t k = 0;
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        for (std::size_t j = 1; j + 1 < cols; ++j, ++k) {
            impulse(i, j) = 1.0;
            laplacian_into(impulse, lap);
            if (with_nonlocal) {
                gaussian_convolve_into(impulse, kernel, scratch, conv);
            }
            std::size_t row_index = 0;
            for (std::size_t a = 1; a + 1 < rows; ++a) {
                for (std::size_t b = 1; b + 1 < cols; ++b, ++row_index) {
                    double value = -lap(a, b);
                    if (with_nonlocal) {
                        value += lambda * conv(a, b);
                    }
                    A(static_cast<Eigen::Index>(row_index),
                      static_cast<Eigen::Index>(k)) = value;
                }
            }
            impulse(i, j) = 0.0;
        }
    }

    Eigen::VectorXd b(unknowns);
    std::size_t idx = 0;
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        for (std::size_t j = 1; j + 1 < cols; ++j, ++idx) {
            b(static_cast<Eigen::Index>(idx)) = f(i, j);
        }
    }

    const Eigen::VectorXd x = A.partialPivLu().solve(b);
    const double residual = (A * x - b).norm();
    const double scale = std::max(1.0, b.norm());
    if (!x.allFinite() || residual > 1e-8 * scale) {
        throw SingularSystemError(
            "direct_solve_oracle: dense solve failed to reproduce the "
            "right-hand side (residual " +
            std::to_string(residual) + ")");
    }

    Field2D u(rows, cols);
    idx = 0;
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        for (std::size_t j = 1; j + 1 < cols; ++j, ++idx) {
            u(i, j) = x(static_cast<Eigen::Index>(idx));
        }
    }
    return u;
}

double energy(const Field2D& u, const Field2D& f, double lambda,
              const KernelSpec& kernel) {
    if (!u.same_shape(f)) {
        throw std::invalid_argument("energy: shape mismatch");
    }
    const std::size_t rows = u.rows();
    const std::size_t cols = u.cols();

    // Forward-difference Dirichlet energy over every adjacent pair.
    double grad_sq = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        const double* here = u.row(i);
        if (i + 1 < rows) {
            const double* below = u.row(i + 1);
            for (std::size_t j = 0; j < cols; ++j) {
                const double d = below[j] - here[j];
                grad_sq += d * d;
            }
        }
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            const double d = here[j + 1] - here[j];
            grad_sq += d * d;
        }
    }

    double value = 0.5 * grad_sq - dot(f, u);
    if (lambda != 0.0) {
        value += 0.5 * lambda * dot(u, gaussian_convolve(u, kernel));
    }
    return value;
}

} // namespace elliptica
