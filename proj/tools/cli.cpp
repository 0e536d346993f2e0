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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elliptica/errors.hpp"
#include "elliptica/image_io.hpp"
#include "elliptica/metrics.hpp"

namespace fs = std::filesystem;

namespace elliptica::cli {

SolvePreset part_a_preset() {
    SolvePreset preset;
    preset.n = 50;
    preset.config.lambda = 5.0;
    preset.config.tau = 0.1;
    preset.config.max_iter = 300;
    preset.config.tol = 1e-4;
    preset.config.sigma = 0.5;
    return preset;
}

PipelinePreset part_b_preset() {
    PipelinePreset preset;
    preset.config.lambda = 1.0;
    preset.config.tau = 1e-4;
    preset.config.max_iter = 300;
    preset.config.tol = 1e-3;
    preset.config.sigma = 3.0;
    preset.noise_levels = {0.05, 0.09, 0.15, 0.18};
    preset.nlm = NLMeansParams{}; // 7x7 template, 21x21 window, h = 15/255
    preset.median_k = 3;
    return preset;
}

Field2D make_bump_field(std::size_t n) {
    Field2D f(n, n);
    const double step = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = static_cast<double>(i) * step;
        for (std::size_t j = 0; j < n; ++j) {
            const double x = static_cast<double>(j) * step;
            f(i, j) = 1.0 + 0.5 * std::exp(-((x - 0.5) * (x - 0.5) +
                                             (y - 0.5) * (y - 0.5)) /
                                           0.02);
        }
    }
    return f;
}

namespace {

void write_residual_csv(const std::vector<double>& history, const fs::path& path) {
    std::FILE* out = std::fopen(path.c_str(), "wb");
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    bool ok = std::fputs("iter,residual\n", out) >= 0;
    for (std::size_t i = 0; ok && i < history.size(); ++i) {
        ok = std::fprintf(out, "%zu,%.17g\n", i + 1, history[i]) > 0;
    }
    ok = std::fclose(out) == 0 && ok;
    if (!ok) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

void print_solve_summary(const char* label, const SolveReport& report) {
    std::printf("%s: %d iterations, final residual %.6e, %s\n", label,
                report.iterations, report.final_residual,
                report.converged ? "converged" : "not converged (max_iter or stall)");
    for (int it = 0; it < report.iterations; it += 50) {
        std::printf("  iter %4d: residual %.6e\n", it + 1,
                    report.residual_history[static_cast<std::size_t>(it)]);
    }
    if (report.iterations > 1) {
        std::printf("  iter %4d: residual %.6e\n", report.iterations,
                    report.final_residual);
    }
}

double relative_l2_error(const Field2D& got, const Field2D& want) {
    if (!got.same_shape(want)) {
        throw std::invalid_argument("relative_l2_error: shape mismatch");
    }
    double diff_sq = 0.0;
    const double* a = got.data();
    const double* b = want.data();
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double d = a[i] - b[i];
        diff_sq += d * d;
    }
    const double ref = norm_l2(want);
    return std::sqrt(diff_sq) / std::max(ref, 1e-300);
}

struct SolveOptions {
    std::string preset;
    std::size_t n = 50;
    double lambda = 5.0;
    double tau = 0.1;
    double sigma = 0.5;
    int max_iter = 2000;
    double tol = 1e-4;
    std::string out_dir = ".";
    bool verify = false;
    bool trace = true;

    CLI::Option* n_opt = nullptr;
    CLI::Option* lambda_opt = nullptr;
    CLI::Option* tau_opt = nullptr;
    CLI::Option* sigma_opt = nullptr;
    CLI::Option* max_iter_opt = nullptr;
    CLI::Option* tol_opt = nullptr;
};

struct PipelineOptions {
    std::string preset;
    std::string image;
    double lambda = 1.0;
    double tau = 1e-4;
    double sigma = 3.0;
    int max_iter = 300;
    double tol = 1e-3;
    std::vector<double> noise_levels;
    std::int64_t seed = 0;
    std::string out_dir = ".";
    std::string format = "ppm";

    CLI::Option* lambda_opt = nullptr;
    CLI::Option* tau_opt = nullptr;
    CLI::Option* sigma_opt = nullptr;
    CLI::Option* max_iter_opt = nullptr;
    CLI::Option* tol_opt = nullptr;
    CLI::Option* noise_opt = nullptr;
};

struct BoundOptions {
    std::size_t n = 0;
    double lambda = 0.0;
    double tau = 0.0;
    CLI::Option* tau_opt = nullptr;
};

int cmd_solve(const SolveOptions& opt) {
    if (!opt.preset.empty()) {
        // part-a is the only solve preset
        std::printf("preset: part-a\n");
    }
    const Field2D f = make_bump_field(opt.n);
    SolverConfig config;
    config.lambda = opt.lambda;
    config.tau = opt.tau;
    config.sigma = opt.sigma;
    config.max_iter = opt.max_iter;
    config.tol = opt.tol;

    std::printf("grid %zux%zu, lambda=%g, tau=%g, sigma=%g, tol=%g, max_iter=%d\n",
                opt.n, opt.n, config.lambda, config.tau, config.sigma, config.tol,
                config.max_iter);

    const StepBound bound = stable_step_bound(opt.n, opt.n, config.lambda);
    if (bound.feasible()) {
        std::printf("contraction step bound: tau < %.6e\n", *bound.tau_max);
    } else {
        std::printf("contraction step bound: INFEASIBLE (lambda*L_G=%g >= %g)\n",
                    config.lambda * bound.lipschitz_g, bound.inv_poincare_sq);
    }

    SolveResult nonlocal_solution = solve_pde(f, config);
    SolveResult poisson_solution = solve_poisson(f, config);
    print_solve_summary("u (nonlocal)", nonlocal_solution.report);
    print_solve_summary("w (poisson supersolution)", poisson_solution.report);

    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    write_field_csv(nonlocal_solution.field, dir / "u.csv");
    write_field_csv(poisson_solution.field, dir / "w.csv");
    std::printf("wrote %s and %s\n", (dir / "u.csv").c_str(), (dir / "w.csv").c_str());
    if (opt.trace) {
        write_residual_csv(nonlocal_solution.report.residual_history,
                           dir / "residual_u.csv");
        write_residual_csv(poisson_solution.report.residual_history,
                           dir / "residual_w.csv");
        std::printf("wrote %s and %s\n", (dir / "residual_u.csv").c_str(),
                    (dir / "residual_w.csv").c_str());
    }

    if (opt.verify) {
        const KernelSpec kernel = make_gaussian_kernel(config.sigma);
        const Field2D oracle_u = direct_solve_oracle(f, config.lambda, kernel);
        const Field2D oracle_w = direct_solve_oracle(f, 0.0, kernel);
        const double err_u = relative_l2_error(nonlocal_solution.field, oracle_u);
        const double err_w = relative_l2_error(poisson_solution.field, oracle_w);
        const bool pass_u = err_u <= 1e-6;
        const bool pass_w = err_w <= 1e-6;
        std::printf("verify u vs dense solve: %s (relative l2 error %.3e)\n",
                    pass_u ? "PASS" : "FAIL", err_u);
        std::printf("verify w vs dense solve: %s (relative l2 error %.3e)\n",
                    pass_w ? "PASS" : "FAIL", err_w);
        if (!pass_u || !pass_w) {
            return 1;
        }
    }
    return 0;
}

std::string sigma_tag(double sigma) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", sigma);
    return buf;
}

int cmd_pipeline(const PipelineOptions& opt) {
    const RGBImage clean = load_image(opt.image);
    std::printf("loaded %s (%zux%zu)\n", opt.image.c_str(), clean.rows(),
                clean.cols());

    const PipelinePreset defaults = part_b_preset();
    SolverConfig config = defaults.config;
    config.lambda = opt.lambda;
    config.tau = opt.tau;
    config.sigma = opt.sigma;
    config.max_iter = opt.max_iter;
    config.tol = opt.tol;
    const NLMeansParams nlm = defaults.nlm;
    const int median_k = defaults.median_k;
    std::vector<double> noise_levels =
        opt.noise_levels.empty() ? defaults.noise_levels : opt.noise_levels;

    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);

    std::printf("restoring (lambda=%g, tau=%g, sigma=%g, max_iter=%d, tol=%g)\n",
                config.lambda, config.tau, config.sigma, config.max_iter,
                config.tol);
    const RGBImage restored = restore_rgb(clean, config);
    const MetricReport restored_metrics = compare(clean, restored);

    struct Row {
        double noise;
        MetricReport restored;
        MetricReport denoised;
    };
    std::vector<Row> rows;

    for (std::size_t idx = 0; idx < noise_levels.size(); ++idx) {
        const double sn = noise_levels[idx];
        const std::uint64_t seed =
            static_cast<std::uint64_t>(opt.seed) + static_cast<std::uint64_t>(idx);
        std::printf("\n--- noise sigma=%.2f (seed %llu) ---\n", sn,
                    static_cast<unsigned long long>(seed));

        const RGBImage noisy = add_gaussian_noise(restored, sn, seed);
        const RGBImage denoised = median_filter(nl_means(noisy, nlm), median_k);
        const MetricReport denoised_metrics = compare(clean, denoised);
        rows.push_back({sn, restored_metrics, denoised_metrics});

        const std::string tag = sigma_tag(sn);
        const std::string ext = "." + opt.format;
        save_image(restored, dir / ("restored_s" + tag + ext));
        save_image(noisy, dir / ("noisy_s" + tag + ext));
        save_image(denoised, dir / ("denoised_s" + tag + ext));

        nlohmann::json j;
        j["noise_sigma"] = sn;
        j["restored"] = nlohmann::json::parse(to_json(restored_metrics));
        j["denoised"] = nlohmann::json::parse(to_json(denoised_metrics));
        const fs::path metrics_path = dir / ("metrics_s" + tag + ".json");
        std::ofstream metrics_file(metrics_path);
        metrics_file << j.dump(2) << "\n";
        if (!metrics_file) {
            throw std::runtime_error("write failed: " + metrics_path.string());
        }

        std::printf("restored: MSE=%.6f PSNR=%.2f dB SSIM=%.4f\n",
                    restored_metrics.mse, restored_metrics.psnr_db,
                    restored_metrics.ssim);
        std::printf("denoised: MSE=%.6f PSNR=%.2f dB SSIM=%.4f\n",
                    denoised_metrics.mse, denoised_metrics.psnr_db,
                    denoised_metrics.ssim);
    }

    std::printf("\n=== Summary ===\n");
    std::printf("%8s | %-13s | %9s | %6s | %8s\n", "noise", "stage", "PSNR (dB)",
                "SSIM", "MSE");
    const fs::path summary_path = dir / "summary.csv";
    std::ofstream summary(summary_path);
    summary << "noise_sigma,stage,psnr_db,ssim,mse\n";
    for (const Row& row : rows) {
        std::printf("%8.2f | %-13s | %9.2f | %6.4f | %8.6f\n", row.noise,
                    "restored-pde", row.restored.psnr_db, row.restored.ssim,
                    row.restored.mse);
        std::printf("%8.2f | %-13s | %9.2f | %6.4f | %8.6f\n", row.noise,
                    "denoised", row.denoised.psnr_db, row.denoised.ssim,
                    row.denoised.mse);
        summary << row.noise << ",restored-pde," << row.restored.psnr_db << ","
                << row.restored.ssim << "," << row.restored.mse << "\n";
        summary << row.noise << ",denoised," << row.denoised.psnr_db << ","
                << row.denoised.ssim << "," << row.denoised.mse << "\n";
    }
    if (!summary) {
        throw std::runtime_error("write failed: " + summary_path.string());
    }
    std::printf("wrote %s\n", summary_path.c_str());
    return 0;
}

int cmd_bound(const BoundOptions& opt) {
    const StepBound bound = stable_step_bound(opt.n, opt.n, opt.lambda);
    std::printf("grid %zux%zu (interior %zux%zu)\n", opt.n, opt.n, opt.n - 2,
                opt.n - 2);
    std::printf("1/C_P^2 (smallest interior eigenvalue): %.10g\n",
                bound.inv_poincare_sq);
    std::printf("|Delta|  (largest interior eigenvalue): %.10g\n",
                bound.laplacian_norm);
    std::printf("L_G: %g\n", bound.lipschitz_g);
    if (bound.feasible()) {
        std::printf("tau bound: %.10g\n", *bound.tau_max);
        if (opt.tau_opt->count() > 0 && opt.tau > *bound.tau_max) {
            std::printf("warning: requested tau %g exceeds the bound %.10g; the "
                        "iteration may still converge (the bound is sufficient, "
                        "not necessary)\n",
                        opt.tau, *bound.tau_max);
        }
    } else {
        std::printf("tau bound: INFEASIBLE\n");
        std::printf("  the contraction certificate needs lambda*L_G < 1/C_P^2, "
                    "but %g >= %.10g;\n",
                    opt.lambda * bound.lipschitz_g, bound.inv_poincare_sq);
        std::printf("  no certified tau exists for these parameters (the "
                    "iteration may still converge in practice)\n");
        if (opt.tau_opt->count() > 0) {
            std::printf("warning: requested tau %g has no certificate here\n",
                        opt.tau);
        }
    }
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"elliptica: nonlocal elliptic PDE image restoration toolkit"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand(
        "solve", "Solve -lap(u) + lambda*G(u) = f and the Poisson supersolution "
                 "on the synthetic bump surface; write CSV surfaces and traces");
    solve->set_config("--config", "",
                      "Flat key=value file mirroring the flags; flags override");
    solve->add_option("--preset", solve_opt.preset, "Built-in experiment preset")
        ->check(CLI::IsMember({"part-a"}));
    solve_opt.n_opt =
        solve->add_option("--n", solve_opt.n, "Grid size (n x n)")
            ->check(CLI::Range(static_cast<std::size_t>(3),
                               static_cast<std::size_t>(100000)));
    solve_opt.lambda_opt =
        solve->add_option("--lambda", solve_opt.lambda, "Nonlocal weight")
            ->check(CLI::NonNegativeNumber);
    solve_opt.tau_opt =
        solve->add_option("--tau", solve_opt.tau, "Relaxation step")
            ->check(CLI::PositiveNumber);
    solve_opt.sigma_opt =
        solve->add_option("--sigma", solve_opt.sigma, "Gaussian kernel sigma")
            ->check(CLI::PositiveNumber);
    solve_opt.max_iter_opt =
        solve->add_option("--max-iter", solve_opt.max_iter, "Iteration cap")
            ->check(CLI::Range(1, 100000000));
    solve_opt.tol_opt =
        solve->add_option("--tol", solve_opt.tol, "Residual stopping threshold")
            ->check(CLI::PositiveNumber);
    solve->add_option("--out-dir", solve_opt.out_dir, "Output directory")
        ->envname("ELLIPTICA_OUT");
    solve->add_flag("--verify", solve_opt.verify,
                    "Check the fixed point against the dense reference solve");
    solve->add_flag("--trace,!--no-trace", solve_opt.trace,
                    "Write per-iteration residual CSV traces (default on)");

    PipelineOptions pipe_opt;
    CLI::App* pipeline = app.add_subcommand(
        "pipeline", "Restore an image, inject Gaussian noise, denoise with "
                    "non-local means and a median filter, report metrics");
    pipeline->set_config("--config", "",
                         "Flat key=value file mirroring the flags; flags override");
    pipeline->add_option("--preset", pipe_opt.preset, "Built-in experiment preset")
        ->check(CLI::IsMember({"part-b"}));
    pipeline->add_option("--image", pipe_opt.image, "Input image (.png/.ppm/.pgm)")
        ->required();
    pipe_opt.lambda_opt =
        pipeline->add_option("--lambda", pipe_opt.lambda, "Nonlocal weight")
            ->check(CLI::NonNegativeNumber);
    pipe_opt.tau_opt =
        pipeline->add_option("--tau", pipe_opt.tau, "Relaxation step")
            ->check(CLI::PositiveNumber);
    pipe_opt.sigma_opt =
        pipeline->add_option("--sigma", pipe_opt.sigma, "Gaussian kernel sigma")
            ->check(CLI::PositiveNumber);
    pipe_opt.max_iter_opt =
        pipeline->add_option("--max-iter", pipe_opt.max_iter, "Iteration cap")
            ->check(CLI::Range(1, 100000000));
    pipe_opt.tol_opt =
        pipeline->add_option("--tol", pipe_opt.tol, "Residual stopping threshold")
            ->check(CLI::PositiveNumber);
    pipe_opt.noise_opt =
        pipeline
            ->add_option("--noise", pipe_opt.noise_levels,
                         "Noise standard deviation (repeatable)")
            ->check(CLI::NonNegativeNumber);
    pipeline->add_option("--seed", pipe_opt.seed,
                         "Base RNG seed; level i uses seed + i");
    pipeline->add_option("--out-dir", pipe_opt.out_dir, "Output directory")
        ->envname("ELLIPTICA_OUT");
    pipeline->add_option("--format", pipe_opt.format, "Stage image format")
        ->check(CLI::IsMember({"ppm", "png"}));

    BoundOptions bound_opt;
    CLI::App* bound = app.add_subcommand(
        "bound", "Print the contraction step bound for a grid and lambda");
    bound->add_option("--n", bound_opt.n, "Grid size (n x n)")
        ->required()
        ->check(CLI::Range(static_cast<std::size_t>(3),
                           static_cast<std::size_t>(100000000)));
    bound->add_option("--lambda", bound_opt.lambda, "Nonlocal weight")
        ->check(CLI::NonNegativeNumber);
    bound_opt.tau_opt = bound->add_option("--tau", bound_opt.tau,
                                          "Step size to check against the bound")
                            ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) {
            if (!solve_opt.preset.empty()) {
                const SolvePreset preset = part_a_preset();
                if (solve_opt.n_opt->count() == 0) solve_opt.n = preset.n;
                if (solve_opt.lambda_opt->count() == 0)
                    solve_opt.lambda = preset.config.lambda;
                if (solve_opt.tau_opt->count() == 0)
                    solve_opt.tau = preset.config.tau;
                if (solve_opt.sigma_opt->count() == 0)
                    solve_opt.sigma = preset.config.sigma;
                if (solve_opt.max_iter_opt->count() == 0)
                    solve_opt.max_iter = preset.config.max_iter;
                if (solve_opt.tol_opt->count() == 0)
                    solve_opt.tol = preset.config.tol;
            }
            return cmd_solve(solve_opt);
        }
        if (pipeline->parsed()) {
            if (!pipe_opt.preset.empty()) {
                const PipelinePreset preset = part_b_preset();
                if (pipe_opt.lambda_opt->count() == 0)
                    pipe_opt.lambda = preset.config.lambda;
                if (pipe_opt.tau_opt->count() == 0)
                    pipe_opt.tau = preset.config.tau;
                if (pipe_opt.sigma_opt->count() == 0)
                    pipe_opt.sigma = preset.config.sigma;
                if (pipe_opt.max_iter_opt->count() == 0)
                    pipe_opt.max_iter = preset.config.max_iter;
                if (pipe_opt.tol_opt->count() == 0)
                    pipe_opt.tol = preset.config.tol;
                if (pipe_opt.noise_opt->count() == 0)
                    pipe_opt.noise_levels = preset.noise_levels;
            }
            return cmd_pipeline(pipe_opt);
        }
        if (bound->parsed()) {
            return cmd_bound(bound_opt);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

} // namespace elliptica::cli
