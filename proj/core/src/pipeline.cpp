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

#include "elliptica/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace elliptica {

double GaussianNoiseStream::uniform01() {
    // Top 53 bits, shifted into (0, 1] so the log below is always finite.
    const std::uint64_t bits = engine_() >> 11;
    return static_cast<double>(bits + 1) * 0x1.0p-53;
}

double GaussianNoiseStream::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

RGBImage add_gaussian_noise(const RGBImage& img, double sigma,
                            std::uint64_t seed) {
    if (sigma < 0.0 || !std::isfinite(sigma)) {
        throw std::invalid_argument("add_gaussian_noise: sigma must be nonnegative");
    }
    if (sigma == 0.0) {
        return img;
    }
    RGBImage out = img;
    GaussianNoiseStream noise(seed);
    for (double& v : out.values()) {
        v = std::clamp(v + sigma * noise.next(), 0.0, 1.0);
    }
    return out;
}

namespace {

void check_nlm_params(const NLMeansParams& params) {
    if (params.template_radius < 1) {
        throw std::invalid_argument("nl_means: template radius must be >= 1");
    }
    if (params.search_radius < params.template_radius) {
        throw std::invalid_argument(
            "nl_means: search radius must be >= template radius");
    }
    if (!(params.h > 0.0)) {
        throw std::invalid_argument("nl_means: h must be positive");
    }
}

// Reflected row/column index lookup covering offsets in [-margin, n + margin).
std::vector<std::size_t> reflect_table(std::size_t n, int margin) {
    std::vector<std::size_t> table(n + 2 * static_cast<std::size_t>(margin));
    for (std::ptrdiff_t i = -margin;
         i < static_cast<std::ptrdiff_t>(n) + margin; ++i) {
        table[static_cast<std::size_t>(i + margin)] = reflect_index(i, n);
    }
    return table;
}

} // namespace

RGBImage nl_means(const RGBImage& img, const NLMeansParams& params) {
    check_nlm_params(params);
    if (img.empty()) {
        throw std::invalid_argument("nl_means: empty image");
    }
    const std::size_t rows = img.rows();
    const std::size_t cols = img.cols();
    constexpr std::size_t ch = RGBImage::kChannels;
    const int r = params.template_radius;
    const int R = params.search_radius;
    const int margin = R + r;
    const std::size_t patch_len = ch * (2 * static_cast<std::size_t>(r) + 1);
    const std::size_t patch_entries =
        patch_len * (2 * static_cast<std::size_t>(r) + 1);

    // Patch distance is the mean squared difference per entry; folding the
    // normalization into the exponent scale keeps the inner loop a raw sum.
    const double inv_scale =
        1.0 / (params.h * params.h * static_cast<double>(patch_entries));
    // exp underflows to exactly 0 beyond this point, so those pairs cannot
    // change the result.
    const double dead_dist = 750.0 / inv_scale;

    const std::vector<std::size_t> row_at = reflect_table(rows, margin);
    const std::vector<std::size_t> col_at = reflect_table(cols, margin);

    const double* v = img.data();
    RGBImage out(rows, cols);
    const bool has_fast_interior = rows > 2 * static_cast<std::size_t>(margin) &&
                                   cols > 2 * static_cast<std::size_t>(margin);

    // Row base offsets in value units.
    std::vector<std::size_t> row_base(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        row_base[i] = i * cols * ch;
    }

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const bool fast =
                has_fast_interior && i >= static_cast<std::size_t>(margin) &&
                i + static_cast<std::size_t>(margin) < rows &&
                j >= static_cast<std::size_t>(margin) &&
                j + static_cast<std::size_t>(margin) < cols;

            double weight_sum = 0.0;
            double acc0 = 0.0;
            double acc1 = 0.0;
            double acc2 = 0.0;

            for (int di = -R; di <= R; ++di) {
                for (int dj = -R; dj <= R; ++dj) {
                    double dist = 0.0;
                    if (fast) {
                        for (int s = -r; s <= r && dist < dead_dist; ++s) {
                            const double* a =
                                v + row_base[i + static_cast<std::size_t>(s)] +
                                (j - static_cast<std::size_t>(r)) * ch;
                            const double* b =
                                v +
                                row_base[static_cast<std::size_t>(
                                    static_cast<std::ptrdiff_t>(i) + di + s)] +
                                (static_cast<std::size_t>(
                                     static_cast<std::ptrdiff_t>(j) + dj - r)) *
                                    ch;
                            double acc = 0.0;
                            for (std::size_t m = 0; m < patch_len; ++m) {
                                const double d = a[m] - b[m];
                                acc += d * d;
                            }
                            dist += acc;
                        }
                    } else {
                        for (int s = -r; s <= r && dist < dead_dist; ++s) {
                            const std::size_t pi =
                                row_at[static_cast<std::size_t>(
                                    static_cast<std::ptrdiff_t>(i) + s + margin)];
                            const std::size_t qi =
                                row_at[static_cast<std::size_t>(
                                    static_cast<std::ptrdiff_t>(i) + di + s +
                                    margin)];
                            for (int t = -r; t <= r; ++t) {
                                const std::size_t pj =
                                    col_at[static_cast<std::size_t>(
                                        static_cast<std::ptrdiff_t>(j) + t +
                                        margin)];
                                const std::size_t qj =
                                    col_at[static_cast<std::size_t>(
                                        static_cast<std::ptrdiff_t>(j) + dj + t +
                                        margin)];
                                const double* a = v + row_base[pi] + pj * ch;
                                const double* b = v + row_base[qi] + qj * ch;
                                for (std::size_t c = 0; c < ch; ++c) {
                                    const double d = a[c] - b[c];
                                    dist += d * d;
                                }
                            }
                        }
                    }

                    if (dist >= dead_dist) {
                        continue; // weight underflows to exactly zero
                    }
                    const double w = std::exp(-dist * inv_scale);
                    const std::size_t qi = row_at[static_cast<std::size_t>(
                        static_cast<std::ptrdiff_t>(i) + di + margin)];
                    const std::size_t qj = col_at[static_cast<std::size_t>(
                        static_cast<std::ptrdiff_t>(j) + dj + margin)];
                    const double* q = v + row_base[qi] + qj * ch;
                    weight_sum += w;
                    acc0 += w * q[0];
                    acc1 += w * q[1];
                    acc2 += w * q[2];
                }
            }

            double* dst = out.data() + row_base[i] + j * ch;
            if (weight_sum > 0.0) {
                dst[0] = acc0 / weight_sum;
                dst[1] = acc1 / weight_sum;
                dst[2] = acc2 / weight_sum;
            } else {
                const double* src = v + row_base[i] + j * ch;
                dst[0] = src[0];
                dst[1] = src[1];
                dst[2] = src[2];
            }
        }
    }
    return out;
}

RGBImage median_filter(const RGBImage& img, int k) {
    if (k < 3 || k % 2 == 0) {
        throw std::invalid_argument("median_filter: k must be odd and >= 3");
    }
    if (img.empty()) {
        throw std::invalid_argument("median_filter: empty image");
    }
    const std::size_t rows = img.rows();
    const std::size_t cols = img.cols();
    constexpr std::size_t ch = RGBImage::kChannels;
    const int m = k / 2;

    const std::vector<std::size_t> row_at = reflect_table(rows, m);
    const std::vector<std::size_t> col_at = reflect_table(cols, m);

    RGBImage out(rows, cols);
    std::vector<double> window(static_cast<std::size_t>(k) * k);
    const std::size_t mid = window.size() / 2;

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t c = 0; c < ch; ++c) {
                std::size_t n = 0;
                for (int s = -m; s <= m; ++s) {
                    const std::size_t pi = row_at[static_cast<std::size_t>(
                        static_cast<std::ptrdiff_t>(i) + s + m)];
                    for (int t = -m; t <= m; ++t) {
                        const std::size_t pj = col_at[static_cast<std::size_t>(
                            static_cast<std::ptrdiff_t>(j) + t + m)];
                        window[n++] = img(pi, pj, c);
                    }
                }
                std::nth_element(window.begin(),
                                 window.begin() + static_cast<std::ptrdiff_t>(mid),
                                 window.end());
                out(i, j, c) = window[mid];
            }
        }
    }
    return out;
}

RGBImage restore_rgb(const RGBImage& img, const SolverConfig& config) {
    if (img.empty()) {
        throw std::invalid_argument("restore_rgb: empty image");
    }
    RGBImage out(img.rows(), img.cols());
    for (std::size_t c = 0; c < RGBImage::kChannels; ++c) {
        const Field2D channel = extract_channel(img, c);
        SolveResult result = solve_pde(channel, config);
        set_channel(out, c, result.field); // clips to [0, 1]
    }
    return out;
}

PipelineResult run_pipeline(const RGBImage& img, const SolverConfig& config,
                            double noise_sigma, std::uint64_t seed,
                            const NLMeansParams& nlm, int median_k) {
    PipelineResult result;
    result.restored = restore_rgb(img, config);
    result.noisy = add_gaussian_noise(result.restored, noise_sigma, seed);
    result.denoised = median_filter(nl_means(result.noisy, nlm), median_k);
    return result;
}

} // namespace elliptica
