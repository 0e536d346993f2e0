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

#include "elliptica/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace elliptica {

KernelSpec make_gaussian_kernel(double sigma, int truncation_radius) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("make_gaussian_kernel: sigma must be positive");
    }
    if (truncation_radius < 1) {
        throw std::invalid_argument("make_gaussian_kernel: radius must be >= 1");
    }
    KernelSpec kernel;
    kernel.sigma = sigma;
    kernel.truncation_radius = truncation_radius;
    kernel.taps.resize(2 * static_cast<std::size_t>(truncation_radius) + 1);

    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    double sum = 0.0;
    for (int k = -truncation_radius; k <= truncation_radius; ++k) {
        const double w = std::exp(-static_cast<double>(k) * k * inv_two_sigma_sq);
        kernel.taps[static_cast<std::size_t>(k + truncation_radius)] = w;
        sum += w;
    }
    for (double& tap : kernel.taps) {
        tap /= sum;
    }
    return kernel;
}

KernelSpec make_gaussian_kernel(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("make_gaussian_kernel: sigma must be positive");
    }
    const int radius = std::max(1, static_cast<int>(std::ceil(4.0 * sigma)));
    return make_gaussian_kernel(sigma, radius);
}

double operator_mass(const KernelSpec& kernel) {
    double sum = 0.0;
    for (double tap : kernel.taps) {
        sum += std::abs(tap);
    }
    return sum;
}

namespace {

// One separable pass along the contiguous axis: dst(i, j) = sum_t taps[t+r] *
// src(i, reflect(j + t)). Accumulates tap by tap so every site sums in the
// same order.
void convolve_rows(const Field2D& src, const std::vector<double>& taps, int radius,
                   Field2D& dst) {
    const std::size_t rows = src.rows();
    const std::size_t cols = src.cols();
    std::fill(dst.values().begin(), dst.values().end(), 0.0);

    for (std::size_t i = 0; i < rows; ++i) {
        const double* in = src.row(i);
        double* out = dst.row(i);
        for (int t = -radius; t <= radius; ++t) {
            const double w = taps[static_cast<std::size_t>(t + radius)];
            // j + t lands in range for j in [lo, hi)
            const std::ptrdiff_t width = static_cast<std::ptrdiff_t>(cols);
            const std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(-t, 0, width);
            const std::ptrdiff_t hi =
                std::min<std::ptrdiff_t>(width, width - t);
            for (std::ptrdiff_t j = 0; j < lo; ++j) {
                out[j] += w * in[reflect_index(j + t, cols)];
            }
            const double* shifted = in + t;
            for (std::ptrdiff_t j = lo; j < hi; ++j) {
                out[j] += w * shifted[j];
            }
            for (std::ptrdiff_t j = std::max(hi, lo); j < width; ++j) {
                out[j] += w * in[reflect_index(j + t, cols)];
            }
        }
    }
}

// Pass across rows: dst(i, j) = sum_t taps[t+r] * src(reflect(i + t), j),
// expressed as row-wise scaled adds.
void convolve_cols(const Field2D& src, const std::vector<double>& taps, int radius,
                   Field2D& dst) {
    const std::size_t rows = src.rows();
    const std::size_t cols = src.cols();
    std::fill(dst.values().begin(), dst.values().end(), 0.0);

    for (std::size_t i = 0; i < rows; ++i) {
        double* out = dst.row(i);
        for (int t = -radius; t <= radius; ++t) {
            const double w = taps[static_cast<std::size_t>(t + radius)];
            const double* in =
                src.row(reflect_index(static_cast<std::ptrdiff_t>(i) + t, rows));
            for (std::size_t j = 0; j < cols; ++j) {
                out[j] += w * in[j];
            }
        }
    }
}

} // namespace

void gaussian_convolve_into(const Field2D& u, const KernelSpec& kernel,
                            Field2D& scratch, Field2D& out) {
    if (kernel.taps.size() != 2 * static_cast<std::size_t>(kernel.truncation_radius) + 1) {
        throw std::invalid_argument("gaussian_convolve: malformed kernel taps");
    }
    if (!u.same_shape(scratch) || !u.same_shape(out)) {
        throw std::invalid_argument("gaussian_convolve: buffer shape mismatch");
    }
    convolve_rows(u, kernel.taps, kernel.truncation_radius, scratch);
    convolve_cols(scratch, kernel.taps, kernel.truncation_radius, out);
}

Field2D gaussian_convolve(const Field2D& u, const KernelSpec& kernel) {
    Field2D scratch(u.rows(), u.cols());
    Field2D out(u.rows(), u.cols());
    gaussian_convolve_into(u, kernel, scratch, out);
    return out;
}

} // namespace elliptica
